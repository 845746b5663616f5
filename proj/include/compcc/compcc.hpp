#pragma once

#include "compcc/boolfn.hpp"
#include "compcc/ccp.hpp"
#include "compcc/cdt.hpp"
#include "compcc/error.hpp"
#include "compcc/fmatrix.hpp"
#include "compcc/io.hpp"
#include "compcc/rectpart.hpp"
#include "compcc/render.hpp"
