/*!
  \file seprop.hpp
  \brief Umbrella header
*/

#pragma once

#include "cli.hpp"
#include "epp.hpp"
#include "faultsim.hpp"
#include "four_value.hpp"
#include "generators.hpp"
#include "netlist.hpp"
#include "ser_report.hpp"
#include "sigprob.hpp"
