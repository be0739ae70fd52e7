#pragma once

#include "scarf/errors.hpp"
#include "scarf/model.hpp"
#include "scarf/factorization.hpp"
#include "scarf/closed_form.hpp"
#include "scarf/ode_oracle.hpp"
#include "scarf/singularity.hpp"
#include "scarf/verification.hpp"
