#include "tuatara/complexity.hpp"

#include <algorithm>

#include "tuatara/errors.hpp"

namespace tuatara {

namespace {

// First domain element (length-lex, i.e. bin order) whose output is x.
ComplexityValue search(const MachineSpec& m, const BitString& x, std::uint64_t budget) {
  ComplexityValue out;
  auto stream = domain_stream(m);
  for (std::uint64_t k = 0; k < budget; ++k) {
    auto e = stream->next();
    if (!e) return out;
    if (!e->certain) {
      out.exact = false;
      continue;
    }
    if (auto y = execute(m, e->word); y && *y == x) {
      out.witness = e->word;
      return out;
    }
  }
  // The budget ran out; an unseen input might still be a witness.
  out.exact = false;
  return out;
}

}  // namespace

ComplexityValue plain_k(const MachineSpec& m, const BitString& x, std::uint64_t budget) {
  ComplexityValue out = search(m, x, budget);
  if (out.witness) out.value = BigInt(static_cast<unsigned long>(out.witness->size()));
  return out;
}

ComplexityValue program_size_h(const MachineSpec& m, const BitString& x, std::uint64_t budget) {
  if (auto pf = known_prefix_free(m); pf && !*pf)
    throw InvalidArgument("program_size_h needs a prefix-free domain; " + m.describe() + " is not");
  return plain_k(m, x, budget);
}

ComplexityValue nabla(const MachineSpec& v, const BitString& x, std::uint64_t budget) {
  ComplexityValue out = search(v, x, budget);
  if (out.witness) out.value = bin_inv(*out.witness);
  return out;
}

std::optional<Rational> universality_factor(const MachineSpec& w, const MachineSpec& v,
                                            std::span<const BitString> sample, std::uint64_t budget) {
  std::optional<Rational> best;
  for (const auto& x : sample) {
    const auto nw = nabla(w, x, budget);
    const auto nv = nabla(v, x, budget);
    if (!nw.value || !nv.value) return std::nullopt;
    const Rational ratio(*nw.value, *nv.value);
    if (!best || ratio > *best) best = ratio;
  }
  return best;
}

ComplexityValue measure(Measure kind, const MachineSpec& m, const BitString& x, std::uint64_t budget) {
  switch (kind) {
    case Measure::Plain: return plain_k(m, x, budget);
    case Measure::ProgramSize: return program_size_h(m, x, budget);
    case Measure::Nabla: return nabla(m, x, budget);
    case Measure::NablaLog: {
      ComplexityValue out = nabla(m, x, budget);
      if (out.value) out.value = BigInt(static_cast<unsigned long>(bit_length(*out.value) - 1));
      return out;
    }
  }
  throw Error("unknown measure");
}

DeficiencyReport deficiency(const BitString& digits, const Rational& s, Measure kind, const MachineSpec& m,
                            std::uint64_t budget) {
  if (digits.empty()) throw InvalidArgument("deficiency needs at least one digit");
  if (s < Rational(1)) throw InvalidArgument("deficiency needs s >= 1, got " + s.to_string());
  const bool nabla_form = kind == Measure::Nabla || kind == Measure::NablaLog;
  DeficiencyReport report;
  for (std::uint64_t len = 1; len <= digits.size(); ++len) {
    DeficiencyRow row;
    row.m = len;
    row.threshold = Rational(static_cast<long>(len)) / s;
    const BitString prefix = digits.prefix(len);
    const ComplexityValue c = measure(kind, m, prefix, budget);
    row.exact = c.exact;
    row.complexity = c.value;
    if (c.value) {
      row.slack = Rational(*c.value) - row.threshold;
      if (!report.worst_slack || *row.slack < *report.worst_slack) report.worst_slack = row.slack;
      if (nabla_form) row.nabla_statistic = Rational(bin_inv(*c.witness)).mul_pow2(-static_cast<std::int64_t>(len));
    } else {
      report.complete = false;
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

std::optional<Rational> liminf_proxy(const BitString& digits, Measure kind, const MachineSpec& m,
                                     std::uint64_t budget) {
  if (digits.empty()) throw InvalidArgument("liminf_proxy needs at least one digit");
  std::optional<Rational> best;
  for (std::uint64_t len = 1; len <= digits.size(); ++len) {
    const ComplexityValue c = measure(kind, m, digits.prefix(len), budget);
    if (!c.value) continue;
    const Rational r = Rational(*c.value) / Rational(static_cast<long>(len));
    if (!best || r < *best) best = r;
  }
  return best;
}

}  // namespace tuatara
