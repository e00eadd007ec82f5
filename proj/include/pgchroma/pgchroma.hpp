#pragma once

#include "pgchroma/error.hpp"
#include "pgchroma/gf.hpp"
#include "pgchroma/pg.hpp"
#include "pgchroma/coloring.hpp"
#include "pgchroma/verify.hpp"
#include "pgchroma/certificate.hpp"
#include "pgchroma/constructors.hpp"
#include "pgchroma/search.hpp"
#include "pgchroma/schedule.hpp"
#include "pgchroma/ramsey.hpp"
#include "pgchroma/manifest.hpp"
