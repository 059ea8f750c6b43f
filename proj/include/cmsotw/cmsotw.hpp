#pragma once

#include "cmsotw/annulus.hpp"
#include "cmsotw/formula.hpp"
#include "cmsotw/graph.hpp"
#include "cmsotw/graph_io.hpp"
#include "cmsotw/prenex.hpp"
#include "cmsotw/reduction.hpp"
#include "cmsotw/semantics.hpp"
#include "cmsotw/structure.hpp"
#include "cmsotw/types.hpp"
#include "cmsotw/width.hpp"
