#pragma once

#include "fairspread/diffusion.hpp"
#include "fairspread/diversity.hpp"
#include "fairspread/error.hpp"
#include "fairspread/experiment.hpp"
#include "fairspread/format.hpp"
#include "fairspread/graph.hpp"
#include "fairspread/metrics.hpp"
#include "fairspread/point.hpp"
#include "fairspread/random.hpp"
#include "fairspread/report.hpp"
#include "fairspread/s3d.hpp"
#include "fairspread/seeding.hpp"
#include "fairspread/transport.hpp"
