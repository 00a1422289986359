#pragma once

#include "qenc/distribution.hpp"
#include "qenc/encoders.hpp"
#include "qenc/interference.hpp"
#include "qenc/linalg.hpp"
#include "qenc/qift.hpp"
#include "qenc/random.hpp"
#include "qenc/spectral.hpp"
#include "qenc/statevec.hpp"
#include "qenc/tolerances.hpp"
#include "qenc/types.hpp"
