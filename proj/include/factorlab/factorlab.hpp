#pragma once

#include "factorlab/combinatorics.hpp"
#include "factorlab/constructions.hpp"
#include "factorlab/corpus.hpp"
#include "factorlab/deciders.hpp"
#include "factorlab/hypergraph.hpp"
#include "factorlab/io.hpp"
#include "factorlab/lattice.hpp"
#include "factorlab/parallel.hpp"
#include "factorlab/report.hpp"
#include "factorlab/rng.hpp"
#include "factorlab/verification.hpp"
#include "factorlab/witness_check.hpp"
