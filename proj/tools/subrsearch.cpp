#include "subr/commands.hpp"

int main(int argc, char** argv) {
    return subr::run_cli(argc, argv);
}
