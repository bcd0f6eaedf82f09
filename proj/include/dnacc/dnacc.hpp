#pragma once

#include "dnacc/bits.hpp"
#include "dnacc/channel.hpp"
#include "dnacc/codec.hpp"
#include "dnacc/error.hpp"
#include "dnacc/flow.hpp"
#include "dnacc/io.hpp"
#include "dnacc/matching.hpp"
#include "dnacc/metrics.hpp"
#include "dnacc/model.hpp"
#include "dnacc/params.hpp"
#include "dnacc/random.hpp"
#include "dnacc/search.hpp"
#include "dnacc/strand.hpp"
