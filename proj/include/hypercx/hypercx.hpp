#pragma once

#include "hypercx/cayley_dickson.hpp"
#include "hypercx/clifford.hpp"
#include "hypercx/errors.hpp"
#include "hypercx/forge.hpp"
#include "hypercx/identities.hpp"
#include "hypercx/numerics.hpp"
#include "hypercx/parallel.hpp"
#include "hypercx/structure_table.hpp"
#include "hypercx/symmetry.hpp"
#include "hypercx/table_io.hpp"
