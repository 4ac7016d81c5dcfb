#pragma once

#include "qam/compare.hpp"
#include "qam/config.hpp"
#include "qam/corpus.hpp"
#include "qam/criteria.hpp"
#include "qam/domain.hpp"
#include "qam/errors.hpp"
#include "qam/generator.hpp"
#include "qam/intervals.hpp"
#include "qam/means.hpp"
#include "qam/numeric.hpp"
#include "qam/rng.hpp"
#include "qam/sample.hpp"
#include "qam/serialize.hpp"
