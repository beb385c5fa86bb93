#include <cusg/cli.hpp>

int main(int argc, char** argv) {
  return cusg::run_cli(argc, argv);
}
