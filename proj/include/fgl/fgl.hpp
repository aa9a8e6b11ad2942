#pragma once

#include "fgl/ratint.hpp"
#include "fgl/mpoly.hpp"
#include "fgl/parse.hpp"
#include "fgl/pseries.hpp"
#include "fgl/bp.hpp"
#include "fgl/morava.hpp"
#include "fgl/abel.hpp"
#include "fgl/ptypical.hpp"
#include "fgl/reproduce.hpp"
