#pragma once

#include "resnet_synth/approx.hpp"
#include "resnet_synth/construct.hpp"
#include "resnet_synth/core_net.hpp"
#include "resnet_synth/error.hpp"
#include "resnet_synth/geometry.hpp"
#include "resnet_synth/io.hpp"
#include "resnet_synth/linalg.hpp"
#include "resnet_synth/lp.hpp"
#include "resnet_synth/render.hpp"
#include "resnet_synth/synthesize.hpp"
#include "resnet_synth/verify.hpp"
