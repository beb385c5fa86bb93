#pragma once

// Everything except the command-line front end.

#include "natinf.hpp"
#include "error.hpp"
#include "table.hpp"
#include "nbar_subset.hpp"
#include "carrier.hpp"
#include "chain.hpp"
#include "waybelow.hpp"
#include "axioms.hpp"
#include "dimension.hpp"
#include "subcu.hpp"
#include "approx.hpp"
#include "enumerate.hpp"
#include "formats.hpp"
#include "report.hpp"
