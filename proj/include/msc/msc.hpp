#pragma once

#include "msc/bench.hpp"
#include "msc/core.hpp"
#include "msc/datagen.hpp"
#include "msc/dynmsc.hpp"
#include "msc/extval.hpp"
#include "msc/fastmsc.hpp"
#include "msc/io.hpp"
#include "msc/naive.hpp"
#include "msc/runner.hpp"
#include "msc/serialize.hpp"
#include "msc/silhouette.hpp"
