#pragma once

#include "loewner/errors.hpp"
#include "loewner/series.hpp"
#include "loewner/functions.hpp"
#include "loewner/disks.hpp"
#include "loewner/report.hpp"
#include "loewner/grid.hpp"
#include "loewner/criteria.hpp"
#include "loewner/lowdisc.hpp"
#include "loewner/oracle.hpp"
#include "loewner/chains.hpp"
#include "loewner/extension.hpp"
