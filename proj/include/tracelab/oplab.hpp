#pragma once

#include "tracelab/oplab/douglas.hpp"
#include "tracelab/oplab/identities.hpp"
#include "tracelab/oplab/inner_space.hpp"
#include "tracelab/oplab/linalg.hpp"
#include "tracelab/oplab/operator.hpp"
#include "tracelab/oplab/pinv.hpp"
#include "tracelab/oplab/random.hpp"
#include "tracelab/oplab/spectral.hpp"
