#ifndef OBFLOW_OBFLOW_HPP
#define OBFLOW_OBFLOW_HPP

// Everything except the command-line front end.

#include "obflow/asymptotics.hpp"
#include "obflow/energetics.hpp"
#include "obflow/errors.hpp"
#include "obflow/fields.hpp"
#include "obflow/model.hpp"
#include "obflow/modes.hpp"
#include "obflow/quadrature.hpp"
#include "obflow/special_functions.hpp"
#include "obflow/spectral.hpp"

#endif  // OBFLOW_OBFLOW_HPP
