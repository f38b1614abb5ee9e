#pragma once

#include "finscat/amplitude.hpp"
#include "finscat/error.hpp"
#include "finscat/field.hpp"
#include "finscat/observables.hpp"
#include "finscat/phases.hpp"
#include "finscat/potential.hpp"
#include "finscat/specfun.hpp"
#include "finscat/version.hpp"
#include "finscat/wavefront.hpp"
