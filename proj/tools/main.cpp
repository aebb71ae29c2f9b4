#include "thresholdlab/cli.hpp"

int main(int argc, char** argv) {
    return tlab::run_cli(argc, argv);
}
