#include "entxfer/cli.hpp"

int main(int argc, char** argv) {
    return entxfer::cli::run(argc, argv);
}
