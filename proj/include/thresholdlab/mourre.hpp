#pragma once

#include <vector>

#include <Eigen/Dense>

#include "thresholdlab/band_solver.hpp"

namespace tlab {

// Candidate index set for one band: strictly increasing positive multiples
// of kappa.
struct sigma_plan {
    int kappa = 0;
    int band = 0;
    std::vector<int> indices;
};

struct coefficient_solution {
    std::vector<int> indices;
    std::vector<double> rho;  // aligned with indices, rho[0] == 1
    std::vector<double> singular_values;
    int nullity = 0;
};

struct validity_verdict {
    bool valid = false;
    double min_value = 0;
    double witness_energy = 0;
    double witness_x = 0;
    int e_grid = 0;
    int x_grid = 0;
};

// g_{j kappa}^E(x) = (1 - x^2) U_{j kappa - 1}(x) + (1 - (E-x)^2) U_{j kappa - 1}(E - x);
// symmetric under x -> E - x and zero at every chain point of a band endpoint.
double g_symbol(int kappa, int j, double energy, double x);

// d/dx of g_symbol; antisymmetric about x = E/2.
double g_symbol_deriv(int kappa, int j, double energy, double x);

// Interpolation rows: for both band endpoints, the value of every g at every
// chain point and its derivative at every interior chain point.
Eigen::MatrixXd assemble_constraints(const sigma_plan& plan);

// Nullspace direction of the constraint matrix, normalized to rho[0] = 1.
coefficient_solution solve_coefficients(const sigma_plan& plan);

// G = sum_q rho_q g_{j_q kappa}^E evaluated at (E, x).
double evaluate_g_sum(int kappa, const std::vector<int>& indices, const std::vector<double>& rho,
                      double energy, double x);

// Strict positivity of G on the open band: sample e_grid interior energies
// and x_grid points of [E-1, 1]; valid iff every sample exceeds margin.
validity_verdict validate_sigma(const sigma_plan& plan, int e_grid = 101, int x_grid = 2001,
                                double margin = 0.0);

}  // namespace tlab
