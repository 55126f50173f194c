#include "looptop/cli.hpp"

int main(int argc, char** argv) { return looptop::run(argc, argv); }
