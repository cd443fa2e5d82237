#pragma once

#include "diaglab/caps.hpp"
#include "diaglab/chromatic.hpp"
#include "diaglab/diaggraph.hpp"
#include "diaglab/error.hpp"
#include "diaglab/graph.hpp"
#include "diaglab/groups.hpp"
#include "diaglab/partitions.hpp"
#include "diaglab/report.hpp"
#include "diaglab/semilattice.hpp"
#include "diaglab/spectral.hpp"
#include "diaglab/symmetry.hpp"
