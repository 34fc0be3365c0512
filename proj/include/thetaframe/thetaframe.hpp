#pragma once
// Convenience umbrella: pulls in the whole library.

#include "thetaframe/core.hpp"
#include "thetaframe/frame.hpp"
#include "thetaframe/io.hpp"
#include "thetaframe/render.hpp"
#include "thetaframe/signals.hpp"
#include "thetaframe/theta.hpp"
#include "thetaframe/verify.hpp"
#include "thetaframe/waveform.hpp"
