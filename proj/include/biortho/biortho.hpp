#pragma once

#include "biortho/asymptotics.hpp"
#include "biortho/config.hpp"
#include "biortho/double_double.hpp"
#include "biortho/errors.hpp"
#include "biortho/numerics.hpp"
#include "biortho/parallel.hpp"
#include "biortho/phase.hpp"
#include "biortho/polys.hpp"
#include "biortho/quadrature.hpp"
#include "biortho/verify.hpp"
