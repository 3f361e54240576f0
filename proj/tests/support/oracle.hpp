#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "supplyrisk/cascade.hpp"
#include "supplyrisk/graph.hpp"

namespace oracle {

// Dense 0/1 adjacency, a[i][j] = 1 for an edge i -> j.
using Dense = std::vector<std::vector<int>>;

Dense dense_adjacency(const supplyrisk::SupplyNetwork &network);
Dense transpose(const Dense &a);

struct NaiveCascade {
    std::vector<double> h;  // h_i(T) for every firm
    int steps = 0;
    std::vector<std::vector<double>> trace;  // h(t) for t = 0..T
};

// The distress recursion written out with full state arrays over a dense
// matrix: w_ji = A_ji / k_i^in, every node updated every step.
NaiveCascade naive_cascade(const Dense &a, const std::vector<int> &seeds);

// Dense distress matrix D (row i = cascade seeded at i), then
// E_i^c = sum_{j in c} D_ij k_j / k^c and E^cd = mean over i in c of E_i^d.
std::vector<std::vector<double>> naive_exposure(const Dense &a, const std::vector<int> &region_of, int regions);

// Vertices reachable from seed along edges, seed included.
std::vector<bool> reachable(const Dense &a, int seed);

struct RandomGraph {
    std::vector<supplyrisk::EdgeRecord> edges;
    std::vector<supplyrisk::FirmRecord> firms;
};

// Erdos-Renyi style directed graph on n firms split over `regions` regions.
// With dag set, only edges from lower to higher index are drawn.
RandomGraph random_graph(std::mt19937_64 &rng, int n, double p, int regions, bool dag = false);

// Mean absolute difference Gini of population-expanded per-capita values:
// sum_ij |x_i - x_j| / (2 n^2 mean).
double pairwise_gini(const std::vector<double> &values, const std::vector<int> &population);

struct NormalEquations {
    std::vector<double> beta;
    std::vector<double> std_error;
    double r_squared = 0.0;
};

// Least squares via (X'X) b = X'y in long double with Gauss-Jordan inversion.
// X includes the intercept column if one is wanted.
NormalEquations normal_equations(const std::vector<std::vector<double>> &rows, const std::vector<double> &y);

double covariance_pearson(const std::vector<double> &x, const std::vector<double> &y);

} // namespace oracle
