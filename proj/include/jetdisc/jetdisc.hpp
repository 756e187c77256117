#pragma once

// Everything except the job-file runner (jetdisc/cli/run.hpp).

#include <jetdisc/algebra/field.hpp>
#include <jetdisc/algebra/ideal_ops.hpp>
#include <jetdisc/algebra/linear.hpp>
#include <jetdisc/algebra/parse.hpp>
#include <jetdisc/algebra/polynomial.hpp>
#include <jetdisc/classify/classify.hpp>
#include <jetdisc/classify/top.hpp>
#include <jetdisc/dimension/dimension.hpp>
#include <jetdisc/dimension/groebner.hpp>
#include <jetdisc/error.hpp>
#include <jetdisc/jets/jets.hpp>
#include <jetdisc/mld/generic.hpp>
#include <jetdisc/mld/mld.hpp>
