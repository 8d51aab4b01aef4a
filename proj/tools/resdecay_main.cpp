#include "resdecay/cli.hpp"

int main(int argc, char** argv) {
  return resdecay::cli::run(argc, argv);
}
