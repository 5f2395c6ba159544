#pragma once

#include "storyline/cnf.hpp"
#include "storyline/dimacs.hpp"
#include "storyline/fpt.hpp"
#include "storyline/generators.hpp"
#include "storyline/instance.hpp"
#include "storyline/instance_io.hpp"
#include "storyline/itd.hpp"
#include "storyline/lambda_search.hpp"
#include "storyline/meeting_groups.hpp"
#include "storyline/permutation.hpp"
#include "storyline/rational.hpp"
#include "storyline/render.hpp"
#include "storyline/sat_backend.hpp"
#include "storyline/sat_solver.hpp"
#include "storyline/sequential.hpp"
#include "storyline/solution.hpp"
#include "storyline/solution_io.hpp"
#include "storyline/timeline.hpp"
