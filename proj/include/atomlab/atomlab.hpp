#pragma once

#include "atomlab/atom.hpp"
#include "atomlab/canonical.hpp"
#include "atomlab/configuration.hpp"
#include "atomlab/degree_spec.hpp"
#include "atomlab/error.hpp"
#include "atomlab/graph.hpp"
#include "atomlab/io.hpp"
#include "atomlab/math.hpp"
#include "atomlab/microcanonical.hpp"
#include "atomlab/random.hpp"
#include "atomlab/sampler.hpp"
#include "atomlab/special_models.hpp"
#include "atomlab/symmetry.hpp"
