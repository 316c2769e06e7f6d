#pragma once

#include "morse/control.hpp"
#include "morse/errors.hpp"
#include "morse/fd_oracle.hpp"
#include "morse/grid.hpp"
#include "morse/levelset.hpp"
#include "morse/observables.hpp"
#include "morse/potential.hpp"
#include "morse/shooting.hpp"
