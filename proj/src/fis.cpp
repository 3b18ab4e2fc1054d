#include "anpso/fis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace anpso {

MembershipFunction MembershipFunction::triangle(double a, double b, double c) {
  MembershipFunction mf{MFKind::Triangle, {a, b, c}};
  mf.repair();
  return mf;
}

MembershipFunction MembershipFunction::gaussian(double center, double sigma) {
  MembershipFunction mf{MFKind::Gaussian, {center, sigma}};
  mf.repair();
  return mf;
}

MembershipFunction MembershipFunction::trapezoid(double a, double b, double c,
                                                 double d) {
  MembershipFunction mf{MFKind::Trapezoid, {a, b, c, d}};
  mf.repair();
  return mf;
}

void MembershipFunction::repair() {
  if (kind == MFKind::Gaussian) {
    params[1] = std::max(params[1], kSigmaMin);
  } else {
    std::sort(params.begin(), params.end());
  }
}

double MembershipFunction::eval(double x) const {
  switch (kind) {
    case MFKind::Triangle: {
      const double a = params[0], b = params[1], c = params[2];
      if (x < a || x > c) return 0.0;
      if (x == b) return 1.0;
      if (x < b) return (x - a) / (b - a);
      return (c - x) / (c - b);
    }
    case MFKind::Gaussian: {
      const double c = params[0], s = params[1];
      const double d = (x - c) / s;
      return std::exp(-0.5 * d * d);
    }
    case MFKind::Trapezoid: {
      const double a = params[0], b = params[1], c = params[2], d = params[3];
      if (x < a || x > d) return 0.0;
      if (x >= b && x <= c) return 1.0;
      if (x < b) return (x - a) / (b - a);
      return (d - x) / (d - c);
    }
  }
  return 0.0;
}

double MembershipFunction::grad(double x, int p) const {
  switch (kind) {
    case MFKind::Triangle: {
      const double a = params[0], b = params[1], c = params[2];
      if (x > a && x < b) {
        const double den = (b - a) * (b - a);
        if (p == 0) return (x - b) / den;
        if (p == 1) return -(x - a) / den;
        return 0.0;
      }
      if (x > b && x < c) {
        const double den = (c - b) * (c - b);
        if (p == 1) return (c - x) / den;
        if (p == 2) return (x - b) / den;
        return 0.0;
      }
      return 0.0;  // outside support or exactly at a kink
    }
    case MFKind::Gaussian: {
      const double c = params[0], s = params[1];
      const double mu = eval(x);
      if (p == 0) return mu * (x - c) / (s * s);
      return mu * (x - c) * (x - c) / (s * s * s);
    }
    case MFKind::Trapezoid: {
      const double a = params[0], b = params[1], c = params[2], d = params[3];
      if (x > a && x < b) {
        const double den = (b - a) * (b - a);
        if (p == 0) return (x - b) / den;
        if (p == 1) return -(x - a) / den;
        return 0.0;
      }
      if (x > c && x < d) {
        const double den = (d - c) * (d - c);
        if (p == 2) return (d - x) / den;
        if (p == 3) return (x - c) / den;
        return 0.0;
      }
      return 0.0;
    }
  }
  return 0.0;
}

namespace {

int param_count(MFKind k) {
  switch (k) {
    case MFKind::Triangle: return 3;
    case MFKind::Gaussian: return 2;
    case MFKind::Trapezoid: return 4;
  }
  return 0;
}

}  // namespace

void FISModel::validate() const {
  if (rules.empty()) throw std::invalid_argument("fis: need at least one rule");
  if (inputs.empty()) throw std::invalid_argument("fis: need at least one input");
  for (const auto& mfs : inputs)
    if (mfs.empty())
      throw std::invalid_argument("fis: every input needs at least one MF");
  for (const auto& in : inputs)
    for (const auto& mf : in) {
      if (static_cast<int>(mf.params.size()) != param_count(mf.kind))
        throw std::invalid_argument("fis: MF parameter count mismatch");
      if (mf.kind == MFKind::Gaussian && mf.params[1] <= 0.0)
        throw std::invalid_argument("fis: gaussian sigma must be positive");
      if (mf.kind != MFKind::Gaussian &&
          !std::is_sorted(mf.params.begin(), mf.params.end()))
        throw std::invalid_argument("fis: MF parameters out of order");
    }
  for (const auto& r : rules) {
    if (static_cast<int>(r.antecedent.size()) != n_inputs())
      throw std::invalid_argument("fis: antecedent length mismatch");
    for (int j = 0; j < n_inputs(); ++j)
      if (r.antecedent[j] < 0 ||
          r.antecedent[j] >= static_cast<int>(inputs[j].size()))
        throw std::invalid_argument("fis: antecedent MF index out of range");
    if (static_cast<int>(r.consequent.size()) != consequent_size())
      throw std::invalid_argument("fis: consequent size mismatch");
  }
}

FiringStrengths fire_rules(const FISModel& model, const std::vector<double>& x) {
  if (static_cast<int>(x.size()) != model.n_inputs())
    throw std::invalid_argument("fire_rules: input length mismatch");
  FiringStrengths fs;
  const int R = model.n_rules();
  fs.raw.resize(R);
  fs.normalized.resize(R);
  double total = 0.0;
  for (int i = 0; i < R; ++i) {
    double w = 1.0;
    for (int j = 0; j < model.n_inputs(); ++j)
      w *= model.inputs[j][model.rules[i].antecedent[j]].eval(x[j]);
    fs.raw[i] = w;
    total += w;
  }
  if (total > 0.0) {
    for (int i = 0; i < R; ++i) fs.normalized[i] = fs.raw[i] / total;
  } else {
    fs.degenerate = true;
    const double u = 1.0 / static_cast<double>(R);
    for (int i = 0; i < R; ++i) fs.normalized[i] = u;
  }
  return fs;
}

double infer(const FISModel& model, const std::vector<double>& x, bool* degenerate) {
  const FiringStrengths fs = fire_rules(model, x);
  if (degenerate) *degenerate = fs.degenerate;
  double out = 0.0;
  for (int i = 0; i < model.n_rules(); ++i) {
    const auto& c = model.rules[i].consequent;
    double f = c.back();
    if (model.first_order)
      for (int j = 0; j < model.n_inputs(); ++j) f += c[j] * x[j];
    out += fs.normalized[i] * f;
  }
  return out;
}

std::vector<double> infer_batch(const FISModel& model,
                                const std::vector<std::vector<double>>& xs) {
  std::vector<double> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] = infer(model, xs[i]);
  return out;
}

namespace {

std::string kind_name(MFKind k) {
  switch (k) {
    case MFKind::Triangle: return "triangle";
    case MFKind::Gaussian: return "gaussian";
    case MFKind::Trapezoid: return "trapezoid";
  }
  return "?";
}

MFKind kind_from_name(const std::string& s) {
  if (s == "triangle") return MFKind::Triangle;
  if (s == "gaussian") return MFKind::Gaussian;
  if (s == "trapezoid") return MFKind::Trapezoid;
  throw std::runtime_error("fis json: unknown MF kind '" + s + "'");
}

}  // namespace

std::string describe_model(const FISModel& model) {
  std::string out;
  out += "inputs: " + std::to_string(model.n_inputs()) + "\n";
  out += "rules: " + std::to_string(model.n_rules()) + "\n";
  out += std::string("order: ") + (model.first_order ? "first" : "zeroth") + "\n";
  for (int j = 0; j < model.n_inputs(); ++j) {
    out += "input " + std::to_string(j) + ": " +
           std::to_string(model.inputs[j].size()) + " MF(s) [";
    for (std::size_t m = 0; m < model.inputs[j].size(); ++m) {
      if (m) out += ' ';
      out += kind_name(model.inputs[j][m].kind);
    }
    out += "]\n";
  }
  for (int i = 0; i < model.n_rules(); ++i) {
    out += "rule " + std::to_string(i) + ": if (";
    for (int j = 0; j < model.n_inputs(); ++j) {
      if (j) out += ", ";
      out += "x" + std::to_string(j) + " is mf" +
             std::to_string(model.rules[i].antecedent[j]);
    }
    out += ")\n";
  }
  return out;
}

std::string model_to_json(const FISModel& model) {
  nlohmann::json j;
  j["first_order"] = model.first_order;
  j["inputs"] = nlohmann::json::array();
  for (const auto& mfs : model.inputs) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& mf : mfs)
      arr.push_back({{"kind", kind_name(mf.kind)}, {"params", mf.params}});
    j["inputs"].push_back(std::move(arr));
  }
  j["rules"] = nlohmann::json::array();
  for (const auto& r : model.rules)
    j["rules"].push_back(
        {{"antecedent", r.antecedent}, {"consequent", r.consequent}});
  return j.dump(2);
}

FISModel model_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  FISModel m;
  m.first_order = j.value("first_order", true);
  for (const auto& in : j.at("inputs")) {
    std::vector<MembershipFunction> mfs;
    for (const auto& e : in) {
      MembershipFunction mf;
      mf.kind = kind_from_name(e.at("kind").get<std::string>());
      mf.params = e.at("params").get<std::vector<double>>();
      mfs.push_back(std::move(mf));
    }
    m.inputs.push_back(std::move(mfs));
  }
  for (const auto& e : j.at("rules")) {
    Rule r;
    r.antecedent = e.at("antecedent").get<std::vector<int>>();
    r.consequent = e.at("consequent").get<std::vector<double>>();
    m.rules.push_back(std::move(r));
  }
  m.validate();
  return m;
}

}  // namespace anpso
