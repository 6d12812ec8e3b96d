#include "resnet_synth/cli.hpp"

int main(int argc, char** argv) { return resnet_synth::cli_main(argc, argv); }
