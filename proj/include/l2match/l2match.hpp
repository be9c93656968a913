#pragma once

#include "l2match/enumerate.hpp"
#include "l2match/error.hpp"
#include "l2match/filter.hpp"
#include "l2match/graph.hpp"
#include "l2match/label_pair_index.hpp"
#include "l2match/oracle.hpp"
#include "l2match/pipeline.hpp"
