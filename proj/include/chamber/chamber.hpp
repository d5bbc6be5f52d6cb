#pragma once

#include "chamber/core.hpp"
#include "chamber/linalg.hpp"
#include "chamber/lattice.hpp"
#include "chamber/cone.hpp"
#include "chamber/q_algebra.hpp"
#include "chamber/atlas.hpp"
#include "chamber/a_model.hpp"
#include "chamber/git_model.hpp"
#include "chamber/cone_cover.hpp"
