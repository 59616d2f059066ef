#include "chronopulse/cli.hpp"

int main(int argc, char** argv) {
    return chronopulse::cli_main({argv + 1, argv + argc});
}
