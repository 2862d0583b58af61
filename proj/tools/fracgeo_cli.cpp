#include "fracgeo/verify.hpp"

int main(int argc, char** argv) {
    return fracgeo::run_cli(argc, argv);
}
