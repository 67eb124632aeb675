#include "naryder/cli.hpp"

int main(int argc, char** argv) { return naryder::run_main(argc, argv); }
