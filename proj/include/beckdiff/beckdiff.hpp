#pragma once

/* Umbrella header: the whole verification engine. */

#include "beckdiff/corpus.hpp"
#include "beckdiff/group_beck.hpp"
#include "beckdiff/json_io.hpp"
#include "beckdiff/kahler.hpp"
#include "beckdiff/lift.hpp"
#include "beckdiff/parallel.hpp"
#include "beckdiff/torsor.hpp"
