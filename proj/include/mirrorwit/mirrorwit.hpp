#pragma once

#include "mirrorwit/analysis.hpp"
#include "mirrorwit/catalog.hpp"
#include "mirrorwit/graphs.hpp"
#include "mirrorwit/linops.hpp"
#include "mirrorwit/mirror.hpp"
#include "mirrorwit/sepopt.hpp"
