#pragma once

#include "ccorr/channel.hpp"
#include "ccorr/correntropy.hpp"
#include "ccorr/equalization.hpp"
#include "ccorr/errors.hpp"
#include "ccorr/filters.hpp"
#include "ccorr/harness/config.hpp"
#include "ccorr/harness/emit.hpp"
#include "ccorr/harness/properties.hpp"
#include "ccorr/harness/sweep.hpp"
#include "ccorr/linalg.hpp"
#include "ccorr/parzen.hpp"
#include "ccorr/random.hpp"
