// Checks the output of `phi --gallery zero --n 8 --l 3 --seed 7` against Q/6.
#include <cstdio>

#include "philyap/gallery.hpp"
#include "philyap/matrix_io.hpp"

int main(int argc, char** argv) {
  if (argc != 2) return 2;
  using namespace philyap;
  const DenseMatrix got = io::read_matrix(argv[1]);
  const DenseMatrix want = gallery::random_symmetric(8, 7) * (1.0 / 6.0);
  const double err = relative_error(want, got);
  std::printf("relative error %.3e\n", err);
  return err <= 1e-15 ? 0 : 1;
}
