#ifndef KPGNN_KPGNN_HPP
#define KPGNN_KPGNN_HPP

#include "kpgnn/error.hpp"
#include "kpgnn/graph.hpp"
#include "kpgnn/graph6.hpp"
#include "kpgnn/khop.hpp"
#include "kpgnn/peripheral.hpp"
#include "kpgnn/intern.hpp"
#include "kpgnn/refine.hpp"
#include "kpgnn/wl3.hpp"
#include "kpgnn/generators.hpp"
#include "kpgnn/results.hpp"
#include "kpgnn/experiments.hpp"

#endif  // KPGNN_KPGNN_HPP
