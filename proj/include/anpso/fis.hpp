#pragma once

#include <string>
#include <vector>

namespace anpso {

enum class MFKind { Triangle, Gaussian, Trapezoid };

/// Triangle: params (a <= b <= c). Gaussian: (center, sigma > 0).
/// Trapezoid: (a <= b <= c <= d). Construction repairs out-of-order
/// parameters by sorting and floors sigma, so arbitrary vectors decode to
/// something evaluable.
struct MembershipFunction {
  MFKind kind = MFKind::Triangle;
  std::vector<double> params;

  static MembershipFunction triangle(double a, double b, double c);
  static MembershipFunction gaussian(double center, double sigma);
  static MembershipFunction trapezoid(double a, double b, double c, double d);

  double eval(double x) const;
  /// d(degree)/d(params[p]) at x; one-sided from the interior, 0 at kinks.
  double grad(double x, int p) const;
  void repair();
};

struct Rule {
  std::vector<int> antecedent;   // one MF index per input
  std::vector<double> consequent;  // (p_1..p_k, r); size 1 = constant only
};

struct FISModel {
  std::vector<std::vector<MembershipFunction>> inputs;
  std::vector<Rule> rules;
  bool first_order = true;

  int n_inputs() const { return static_cast<int>(inputs.size()); }
  int n_rules() const { return static_cast<int>(rules.size()); }
  int consequent_size() const { return first_order ? n_inputs() + 1 : 1; }
  void validate() const;  // throws on violated structural invariants
};

struct FiringStrengths {
  std::vector<double> raw;
  std::vector<double> normalized;
  bool degenerate = false;  // all raw strengths were zero; uniform fallback
};

FiringStrengths fire_rules(const FISModel& model, const std::vector<double>& x);

double infer(const FISModel& model, const std::vector<double>& x,
             bool* degenerate = nullptr);

/// Batch inference over dataset rows (row-major feature matrix).
std::vector<double> infer_batch(const FISModel& model,
                                const std::vector<std::vector<double>>& xs);

std::string model_to_json(const FISModel& model);
FISModel model_from_json(const std::string& text);

/// Human-readable structural summary (rule count, per-input MF counts and
/// kinds) for CLI output and fitness reports.
std::string describe_model(const FISModel& model);

constexpr double kSigmaMin = 1e-4;

}  // namespace anpso
