#pragma once

#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "subdiff/quadrature.hpp"
#include "subdiff/spatial_mesh.hpp"
#include "subdiff/time_grid.hpp"

namespace subdiff {

/// ||exact - U_h||_L2 via the given quadrature rule.
double l2_error(const SpatialMesh& mesh, std::span<const double> U,
                const std::function<double(Point)>& exact, const QuadratureRule& rule);

/// ||grad exact - grad U_h||_L2 (H1 seminorm of the error).
double h1_semi_error(const SpatialMesh& mesh, std::span<const double> U,
                     const std::function<Vec2(Point)>& grad_exact, const QuadratureRule& rule);

enum class NormTag { linf_time_l2, l2_final_family, h1_semi };

std::string to_string(NormTag tag);

/// max over n = 1..N of the spatial error norm at t_n (L2 for
/// linf_time_l2 / l2_final_family, H1 seminorm for h1_semi), evaluated
/// with the refined norm rule. history holds U^0..U^N.
struct TimeMaxError {
    double value = 0.0;
    int argmax = 0;  ///< time level attaining the max
};

TimeMaxError max_over_time(const SpatialMesh& mesh,
                           const std::vector<std::vector<double>>& history, const TimeGrid& grid,
                           const std::function<double(Point, double)>& u_exact,
                           const std::function<Vec2(Point, double)>& grad_u_exact, NormTag norm);

/// Observed orders between consecutive resolutions:
/// order_i = ln(e_i/e_{i+1}) / ln(m_{i+1}/m_i). Nonpositive errors give
/// an absent order. Result has size errors.size()-1.
std::vector<std::optional<double>> observed_orders(std::span<const double> errors,
                                                   std::span<const double> resolutions);

/// One row of a convergence table.
struct ErrorRecord {
    int example = 0;
    double alpha = 0.0;
    double r = 1.0;
    int N = 0;
    int Ms = 0;
    NormTag norm = NormTag::linf_time_l2;
    double error = 0.0;
    std::optional<double> order;  ///< absent on the finest row
};

/// Deterministic CSV emission. Header:
/// example,alpha,r,N,Ms,norm,error,order  -- floats with 10 significant
/// digits, `order` empty when absent. Records are written in the order
/// given (callers sort).
void write_csv(std::ostream& os, std::span<const ErrorRecord> records);

/// %.10g formatting used for all CSV floats.
std::string format_double(double v);

} // namespace subdiff
