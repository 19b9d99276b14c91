#pragma once

#include "realize/error.hpp"
#include "realize/money.hpp"
#include "realize/market.hpp"
#include "realize/ledger.hpp"
#include "realize/realization.hpp"
#include "realize/taxation.hpp"
#include "realize/scenario.hpp"
#include "realize/dsl.hpp"
#include "realize/report.hpp"
#include "realize/paper_tables.hpp"
