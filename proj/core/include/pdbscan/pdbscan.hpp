#pragma once

// Umbrella header.

#include "pdbscan/bit_matrix.hpp"
#include "pdbscan/blobs.hpp"
#include "pdbscan/errors.hpp"
#include "pdbscan/io.hpp"
#include "pdbscan/kernels.hpp"
#include "pdbscan/memory.hpp"
#include "pdbscan/merge.hpp"
#include "pdbscan/oracle.hpp"
#include "pdbscan/pipeline.hpp"
#include "pdbscan/points.hpp"
