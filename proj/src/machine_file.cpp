#include "tuatara/machine_file.hpp"

#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <vector>

#include "tuatara/errors.hpp"
#include "tuatara/iota.hpp"

namespace tuatara {

namespace {

std::vector<std::string> split_words(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

BitString bits_at(std::size_t line, const std::string& text) {
  try {
    return BitString::parse(text);
  } catch (const Error&) {
    throw ParseError(line, "bad bit string '" + text + "' (expected 0/1 characters or eps)");
  }
}

std::uint64_t count_at(std::size_t line, const std::string& text) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
    throw ParseError(line, "expected a nonnegative integer, got '" + text + "'");
  try {
    return std::stoull(text);
  } catch (const std::exception&) {
    throw ParseError(line, "integer out of range: '" + text + "'");
  }
}

const std::map<std::string, ConstructionKind>& construction_names() {
  static const std::map<std::string, ConstructionKind> names{
      {"product", ConstructionKind::Product},
      {"double", ConstructionKind::Double},
      {"tuatara_of", ConstructionKind::TuatarafOf},
      {"universal_tuatara", ConstructionKind::UniversalTuatara},
      {"universal_convergent", ConstructionKind::UniversalConvergent},
      {"prime_product", ConstructionKind::PrimeProduct},
  };
  return names;
}

struct Block {
  std::string name;
  std::size_t line = 0;
  std::optional<std::string> kind;
  std::size_t kind_line = 0;
  // finite and builtin extras
  std::vector<BitString> domain;
  std::set<BitString> seen;
  std::map<BitString, BitString> outputs;
  bool prefix_free = false;
  std::size_t prefix_free_line = 0;
  // builtin
  std::vector<std::string> generator;
  std::size_t generator_line = 0;
  // construction
  std::optional<ConstructionKind> construct;
  std::vector<std::string> operands;
  std::size_t construct_line = 0;
  std::vector<Rational> bounds;
};

class Reader {
 public:
  MachineSpec read(std::string_view text) {
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      ++line_no;
      std::string_view line = text.substr(start, end - start);
      if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
      handle(line_no, split_words(line));
      start = end + 1;
    }
    finish_block();
    if (!last_) throw ParseError(line_no, "no machine block found");
    return *last_;
  }

 private:
  void handle(std::size_t line, const std::vector<std::string>& w) {
    if (w.empty()) return;
    const std::string& key = w[0];
    if (key == "machine") {
      if (w.size() != 2) throw ParseError(line, "expected 'machine NAME'");
      finish_block();
      if (built_.count(w[1])) throw ParseError(line, "duplicate machine name '" + w[1] + "'");
      block_ = Block{};
      block_->name = w[1];
      block_->line = line;
      return;
    }
    if (!block_) throw ParseError(line, "'" + key + "' before any 'machine NAME' line");
    Block& b = *block_;
    if (key == "kind") {
      if (w.size() != 2) throw ParseError(line, "expected 'kind finite|builtin|construction'");
      if (b.kind) throw ParseError(line, "duplicate kind line");
      if (w[1] != "finite" && w[1] != "builtin" && w[1] != "construction")
        throw ParseError(line, "unknown kind '" + w[1] + "'");
      b.kind = w[1];
      b.kind_line = line;
      return;
    }
    if (!b.kind) throw ParseError(line, "'" + key + "' before the kind line");
    if (key == "domain" && (*b.kind == "finite" || *b.kind == "builtin")) {
      if (w.size() != 2) throw ParseError(line, "expected 'domain BITS'");
      add_domain(line, bits_at(line, w[1]));
      return;
    }
    if (key == "map" && *b.kind == "finite") {
      if (w.size() != 4 || w[2] != "->") throw ParseError(line, "expected 'map BITS -> BITS'");
      const BitString in = bits_at(line, w[1]);
      const BitString out = bits_at(line, w[3]);
      if (b.outputs.count(in)) throw ParseError(line, "duplicate map entry for " + in.render());
      if (!b.seen.count(in)) add_domain(line, in);
      b.outputs.emplace(in, out);
      return;
    }
    if (key == "prefix-free" && *b.kind == "finite") {
      if (w.size() != 1) throw ParseError(line, "'prefix-free' takes no arguments");
      b.prefix_free = true;
      b.prefix_free_line = line;
      return;
    }
    if (key == "generator" && *b.kind == "builtin") {
      if (!b.generator.empty()) throw ParseError(line, "duplicate generator line");
      if (w.size() < 2) throw ParseError(line, "expected 'generator NAME'");
      b.generator.assign(w.begin() + 1, w.end());
      b.generator_line = line;
      return;
    }
    if (key == "construct" && *b.kind == "construction") {
      if (b.construct) throw ParseError(line, "duplicate construct line");
      if (w.size() != 3) throw ParseError(line, "expected 'construct KIND NAME[,NAME...]'");
      auto it = construction_names().find(w[1]);
      if (it == construction_names().end()) throw ParseError(line, "unknown construction '" + w[1] + "'");
      b.construct = it->second;
      b.operands = split_commas(w[2]);
      b.construct_line = line;
      return;
    }
    if (key == "bound" && *b.kind == "construction") {
      if (w.size() != 2) throw ParseError(line, "expected 'bound RATIONAL'");
      try {
        b.bounds.push_back(Rational::parse(w[1]));
      } catch (const Error&) {
        throw ParseError(line, "bad rational '" + w[1] + "'");
      }
      return;
    }
    throw ParseError(line, "unknown key '" + key + "' in a " + *b.kind + " block");
  }

  void add_domain(std::size_t line, const BitString& s) {
    Block& b = *block_;
    if (!b.seen.insert(s).second) throw ParseError(line, "duplicate domain string " + s.render());
    b.domain.push_back(s);
  }

  void finish_block() {
    if (!block_) return;
    Block b = std::move(*block_);
    block_.reset();
    if (!b.kind) throw ParseError(b.line, "machine '" + b.name + "' has no kind line");
    const MachineSpec spec = build(b);
    built_.emplace(b.name, spec);
    last_ = spec;
  }

  MachineSpec build(const Block& b) {
    if (*b.kind == "finite") {
      if (b.prefix_free && !is_prefix_free(b.domain))
        throw ParseError(b.prefix_free_line, "domain of '" + b.name + "' is not prefix-free");
      return MachineSpec::finite(b.domain, b.outputs);
    }
    if (*b.kind == "builtin") {
      if (b.generator.empty()) throw ParseError(b.kind_line, "builtin machine '" + b.name + "' has no generator");
      const auto& g = b.generator;
      const std::size_t at = b.generator_line;
      if (g[0] != "geometric" && !b.domain.empty())
        throw ParseError(at, "domain lines are only allowed with the geometric generator");
      if (g[0] == "all_strings" && g.size() == 1) return MachineSpec::all_strings();
      if (g[0] == "lukasiewicz" && g.size() == 1) return MachineSpec::lukasiewicz();
      if (g[0] == "iota" && g.size() <= 2)
        return MachineSpec::iota(g.size() == 2 ? count_at(at, g[1]) : iota::kDefaultSteps);
      if (g[0] == "geometric" && g.size() == 2) {
        try {
          return MachineSpec::geometric(count_at(at, g[1]), b.domain);
        } catch (const InvalidArgument& e) {
          throw ParseError(at, e.what());
        }
      }
      throw ParseError(at, "unknown generator '" + g[0] + "' or wrong argument count");
    }
    if (!b.construct) throw ParseError(b.kind_line, "construction '" + b.name + "' has no construct line");
    const std::size_t at = b.construct_line;
    std::vector<MachineSpec> ops;
    for (const auto& name : b.operands) {
      auto it = built_.find(name);
      if (it == built_.end()) throw ParseError(at, "unknown operand '" + name + "' (operands must be defined earlier)");
      ops.push_back(it->second);
    }
    const ConstructionKind kind = *b.construct;
    const bool many = kind == ConstructionKind::UniversalTuatara || kind == ConstructionKind::UniversalConvergent;
    if (!many && ops.size() != 1) throw ParseError(at, "this construction takes exactly one operand");
    if (kind != ConstructionKind::UniversalConvergent && !b.bounds.empty())
      throw ParseError(at, "bound lines are only allowed for universal_convergent");
    if (kind == ConstructionKind::UniversalConvergent && b.bounds.size() != ops.size())
      throw ParseError(at, "universal_convergent needs one bound line per member");
    try {
      switch (kind) {
        case ConstructionKind::Product: return MachineSpec::product(ops[0]);
        case ConstructionKind::Double: return MachineSpec::doubled(ops[0]);
        case ConstructionKind::TuatarafOf: return MachineSpec::tuatara_of(ops[0]);
        case ConstructionKind::UniversalTuatara: return MachineSpec::universal_tuatara(ops);
        case ConstructionKind::UniversalConvergent: return MachineSpec::universal_convergent(ops, b.bounds);
        case ConstructionKind::PrimeProduct: return MachineSpec::prime_product(ops[0]);
      }
    } catch (const InvalidArgument& e) {
      throw ParseError(at, e.what());
    }
    throw ParseError(at, "unknown construction");
  }

  std::optional<Block> block_;
  std::map<std::string, MachineSpec> built_;
  std::optional<MachineSpec> last_;
};

class Writer {
 public:
  std::string write(const MachineSpec& m) {
    emit(m);
    return out_.str();
  }

 private:
  std::string emit(const MachineSpec& m) {
    std::vector<std::string> ops;
    if (const auto* c = m.as_construction())
      for (const auto& op : c->operands) ops.push_back(emit(op));
    const std::string name = "m" + std::to_string(++count_);
    out_ << "machine " << name << "\n";
    if (const auto* f = m.as_finite()) {
      out_ << "kind finite\n";
      for (const auto& w : f->domain) {
        auto it = f->outputs.find(w);
        if (it == f->outputs.end())
          out_ << "domain " << w.render() << "\n";
        else
          out_ << "map " << w.render() << " -> " << it->second.render() << "\n";
      }
    } else if (const auto* b = m.as_builtin()) {
      out_ << "kind builtin\n";
      switch (b->kind) {
        case BuiltinKind::AllStrings: out_ << "generator all_strings\n"; break;
        case BuiltinKind::Lukasiewicz: out_ << "generator lukasiewicz\n"; break;
        case BuiltinKind::Iota: out_ << "generator iota " << b->steps << "\n"; break;
        case BuiltinKind::Geometric:
          out_ << "generator geometric " << b->start << "\n";
          for (const auto& e : b->extras) out_ << "domain " << e.render() << "\n";
          break;
      }
    } else {
      const auto& c = *m.as_construction();
      std::string kind;
      for (const auto& [k, v] : construction_names())
        if (v == c.kind) kind = k;
      out_ << "kind construction\nconstruct " << kind << " ";
      for (std::size_t i = 0; i < ops.size(); ++i) out_ << (i ? "," : "") << ops[i];
      out_ << "\n";
      for (const auto& bound : c.bounds) out_ << "bound " << bound.to_string() << "\n";
    }
    return name;
  }

  std::ostringstream out_;
  int count_ = 0;
};

}  // namespace

MachineSpec parse_machine_file(std::string_view text) { return Reader().read(text); }

std::string write_machine_file(const MachineSpec& m) { return Writer().write(m); }

}  // namespace tuatara
