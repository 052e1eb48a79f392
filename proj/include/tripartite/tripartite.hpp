#pragma once

#include "tripartite/qcore.hpp"
#include "tripartite/seeding.hpp"
#include "tripartite/states.hpp"
#include "tripartite/circuits.hpp"
#include "tripartite/measures.hpp"
#include "tripartite/tomography.hpp"
#include "tripartite/classify.hpp"
