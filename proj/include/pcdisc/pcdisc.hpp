#pragma once

#include "pcdisc/discrepancy.hpp"
#include "pcdisc/matrix_io.hpp"
#include "pcdisc/pc_matrix.hpp"
#include "pcdisc/ranking.hpp"
#include "pcdisc/report_json.hpp"
#include "pcdisc/revision.hpp"
