#include "ionmirror/cli.hpp"

int main(int argc, char** argv) {
    return ionmirror::run_cli(argc, argv);
}
