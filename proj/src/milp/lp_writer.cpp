#include "uamfleet/milp/lp_writer.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "uamfleet/csv.hpp"

namespace uam::milp {

namespace {

constexpr std::size_t kWrapColumn = 200;

class LineWriter {
 public:
  explicit LineWriter(std::string& out) : out_(out) {}

  void Begin(const std::string& prefix) {
    out_ += prefix;
    column_ = prefix.size();
  }
  void Token(const std::string& token) {
    if (column_ + token.size() + 1 > kWrapColumn) {
      out_ += "\n ";
      column_ = 1;
    }
    out_ += ' ';
    out_ += token;
    column_ += token.size() + 1;
  }
  void End() { out_ += '\n'; }

 private:
  std::string& out_;
  std::size_t column_ = 0;
};

// Merges duplicate variables and orders by key.
std::vector<Term> Canonical(const MilpModel& model, const std::vector<Term>& terms) {
  std::map<VarKey, std::pair<int, double>> merged;
  for (const auto& t : terms) {
    auto& slot = merged[model.variables()[static_cast<std::size_t>(t.var)].key];
    slot.first = t.var;
    slot.second += t.coef;
  }
  std::vector<Term> out;
  for (const auto& [key, entry] : merged) {
    if (entry.second != 0.0) out.push_back({entry.first, entry.second});
  }
  return out;
}

void WriteTerms(const MilpModel& model, const std::vector<Term>& terms, LineWriter& w) {
  for (const auto& t : Canonical(model, terms)) {
    const std::string name = model.variables()[static_cast<std::size_t>(t.var)].key.Name();
    const double mag = std::abs(t.coef);
    std::string token = t.coef < 0 ? "- " : "+ ";
    if (mag != 1.0) token += csv::FormatShortest(mag) + " ";
    token += name;
    w.Token(token);
  }
}

const char* SenseText(Sense s) {
  switch (s) {
    case Sense::kLessEqual: return "<=";
    case Sense::kGreaterEqual: return ">=";
    case Sense::kEqual: return "=";
  }
  return "=";
}

}  // namespace

std::string WriteLp(const MilpModel& model) {
  std::string out;
  LineWriter w(out);

  std::vector<int> order(model.variables().size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return model.variables()[static_cast<std::size_t>(a)].key <
           model.variables()[static_cast<std::size_t>(b)].key;
  });

  out += "Minimize\n";
  w.Begin(" obj:");
  WriteTerms(model, model.objective(), w);
  if (model.objective_offset() != 0.0) {
    w.Token((model.objective_offset() < 0 ? "- " : "+ ") +
            csv::FormatShortest(std::abs(model.objective_offset())));
  }
  w.End();

  out += "Subject To\n";
  for (const auto& c : model.constraints()) {
    w.Begin(" " + c.name + ":");
    if (c.terms.empty()) w.Token("0 " + model.variables().front().key.Name());
    WriteTerms(model, c.terms, w);
    w.Token(std::string(SenseText(c.sense)) + " " + csv::FormatShortest(c.rhs));
    w.End();
  }

  std::vector<std::string> bounds;
  std::vector<std::string> generals;
  for (int idx : order) {
    const auto& v = model.variables()[static_cast<std::size_t>(idx)];
    const std::string name = v.key.Name();
    const bool finite_upper = std::isfinite(v.upper);
    if (finite_upper) {
      bounds.push_back(" " + csv::FormatShortest(v.lower) + " <= " + name +
                       " <= " + csv::FormatShortest(v.upper));
    } else if (v.lower != 0.0) {
      bounds.push_back(" " + name + " >= " + csv::FormatShortest(v.lower));
    }
    if (v.integer) generals.push_back(name);
  }
  if (!bounds.empty()) {
    out += "Bounds\n";
    for (const auto& b : bounds) out += b + "\n";
  }
  if (!generals.empty()) {
    out += "General\n";
    w.Begin("");
    for (const auto& g : generals) w.Token(g);
    w.End();
  }
  out += "End\n";
  return out;
}

}  // namespace uam::milp
