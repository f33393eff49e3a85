#pragma once

#include "core.hpp"
#include "roots.hpp"
#include "sympoly.hpp"
#include "waring.hpp"
#include "linalg.hpp"
#include "bergman.hpp"
#include "spectral.hpp"
#include "circle.hpp"
#include "metrics.hpp"
#include "certify.hpp"
#include "io.hpp"
