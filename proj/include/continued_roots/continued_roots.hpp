#pragma once

#include "continued_root.hpp"
#include "corpus.hpp"
#include "diagnostics.hpp"
#include "error.hpp"
#include "power_series.hpp"
#include "report_io.hpp"
