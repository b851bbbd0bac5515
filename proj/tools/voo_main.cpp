#include "voo/cli.hpp"

int main(int argc, char** argv) {
    return voo::cli_main(argc, argv);
}
