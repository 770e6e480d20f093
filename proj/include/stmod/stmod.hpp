#pragma once

#include "stmod/errors.hpp"
#include "stmod/linalg.hpp"
#include "stmod/kernels.hpp"
#include "stmod/groups.hpp"
#include "stmod/reps.hpp"
#include "stmod/stable.hpp"
#include "stmod/cohom.hpp"
#include "stmod/ghosts.hpp"
#include "stmod/ar.hpp"
#include "stmod/io.hpp"
#include "stmod/report.hpp"
