#pragma once

#include "nzflow/conditioning.hpp"
#include "nzflow/errors.hpp"
#include "nzflow/io.hpp"
#include "nzflow/landscape.hpp"
#include "nzflow/lognum.hpp"
#include "nzflow/manifest.hpp"
#include "nzflow/moments.hpp"
#include "nzflow/multigraph.hpp"
#include "nzflow/orientation.hpp"
#include "nzflow/pairing.hpp"
#include "nzflow/parallel.hpp"
#include "nzflow/rational.hpp"
#include "nzflow/rng.hpp"
#include "nzflow/version.hpp"
