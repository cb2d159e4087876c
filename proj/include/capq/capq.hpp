/*
 * capq - exact q-series toolkit for Capparelli-type partition identities
 */
#pragma once

#include "capq/qpoly.hpp"
#include "capq/qcomb.hpp"
#include "capq/partitions.hpp"
#include "capq/series.hpp"
#include "capq/verify.hpp"
