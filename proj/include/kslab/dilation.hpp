#pragma once

#include <string>
#include <vector>

#include "kslab/frame.hpp"

namespace kslab {

/// A Parseval family realised as the compression of an orthonormal basis of
/// a larger space: projection * e_i corresponds to f_i under `embedding`.
struct DilationResult {
  Index ambient_dim = 0;
  Matrix projection;  // ambient x ambient, the Gram matrix of the Parseval family
  Matrix embedding;   // ambient x n, the analysis operator (an isometry)
  Frame added_vectors;  // complements h_i appended to reach a Parseval family (may have 0 columns)
  bool strict_contraction = false;  // lambda_1 < 1 - check_tol; n complements appended
  bool normalized = false;          // input was scaled to norm one first
  double input_norm = 0.0;
  double parseval_deviation = 0.0;  // ||S - I|| of the dilated family
  std::vector<std::string> notes;
};

/// Dilation of a Parseval frame. Throws ContractViolation naming ||S - I||
/// when the input is not Parseval within check_tol.
DilationResult naimark_dilate(const Frame& fr, const Tolerances& tol = {});

struct DilateOptions {
  bool normalize = false;  // scale T to norm one instead of rejecting ||T|| > 1
};

/// Dilation of an n x n operator with ||T|| <= 1: the first n ambient basis
/// vectors project onto T g_i. Ambient dimension 2n - 1 when ||T|| = 1
/// (within check_tol), otherwise 2n.
DilationResult dilate_operator(const Matrix& T, const Tolerances& tol = {}, DilateOptions opt = {});

/// Appends h_i = sqrt(1 - lambda_i) x_i for every eigenpair of S with
/// lambda_i < 1 - check_tol. Requires lambda_max(S) <= 1 + check_tol.
Frame parseval_complete(const Frame& fr, const Tolerances& tol = {});

}  // namespace kslab
