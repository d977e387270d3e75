#include "tuatara/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <optional>
#include <sstream>

#include "tuatara/complexity.hpp"
#include "tuatara/egyptian.hpp"
#include "tuatara/errors.hpp"
#include "tuatara/iota.hpp"
#include "tuatara/kraft.hpp"
#include "tuatara/machine_file.hpp"
#include "tuatara/machines.hpp"
#include "tuatara/numerics.hpp"
#include "tuatara/spectral.hpp"

namespace tuatara::cli {

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

std::string hi_text(const Enclosure& e) { return e.hi() ? e.hi()->to_string() : "inf"; }

struct Options {
  std::uint64_t budget = 100000;
  std::size_t digits = 10;
  std::string format = "table";
  std::string machine_path;
  std::string s_text = "1";

  bool csv() const { return format == "csv"; }
  Rational s() const {
    try {
      return Rational::parse(s_text);
    } catch (const Error&) {
      throw InvalidArgument("-s expects a rational like 3/2 or 1.5, got '" + s_text + "'");
    }
  }
};

MachineSpec load_machine(const Options& o) {
  if (o.machine_path.empty()) throw InvalidArgument("this command needs --machine FILE");
  std::ifstream in(o.machine_path);
  if (!in) throw InvalidArgument("cannot read machine file '" + o.machine_path + "'");
  std::stringstream text;
  text << in.rdbuf();
  try {
    return parse_machine_file(text.str());
  } catch (const ParseError& e) {
    throw InvalidArgument(o.machine_path + ": " + e.what());
  }
}

BigInt parse_integer(const std::string& text) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
    throw InvalidArgument("expected a nonnegative integer, got '" + text + "'");
  return BigInt(text);
}

BitString parse_bits(const std::string& text) {
  try {
    return BitString::parse(text);
  } catch (const Error&) {
    throw InvalidArgument("expected a bit string (0/1 or eps), got '" + text + "'");
  }
}

Measure parse_measure(const std::string& name) {
  if (name == "plain") return Measure::Plain;
  if (name == "h") return Measure::ProgramSize;
  if (name == "nabla") return Measure::Nabla;
  if (name == "nabla-log") return Measure::NablaLog;
  throw InvalidArgument("unknown measure '" + name + "' (plain, h, nabla, nabla-log)");
}

std::string optional_text(const std::optional<BigInt>& v) { return v ? v->get_str() : "none"; }
std::string optional_text(const std::optional<Rational>& v) { return v ? v->to_string() : "none"; }

class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int enclosure_row(const std::string& quantity, const MachineSpec& m, const Rational& s, const Enclosure& e) {
    Table t{{"quantity", "machine", "s", "budget", "lo", "hi", "decimal", "binary"}, {}};
    t.rows.push_back({quantity, m.describe(), s.to_string(), std::to_string(o.budget), e.lo().to_string(), hi_text(e),
                      certified_decimal(e, o.digits), certified_binary(e, o.digits)});
    t.print(out_, o.csv());
    if (!e.bounded() && !analytically_divergent(m)) {
      err_ << "no upper bound within the budget\n";
      return kBudget;
    }
    return kOk;
  }

  int complexity_row(const std::string& name, const MachineSpec& m, const BitString& x, const ComplexityValue& c) {
    Table t{{"measure", "x", "value", "witness", "exact"}, {}};
    t.rows.push_back({name, x.render(), optional_text(c.value), c.witness ? c.witness->render() : "none",
                      c.exact ? "yes" : "no"});
    t.print(out_, o.csv());
    (void)m;
    if (!c.value && !c.exact) {
      err_ << "no witness within the budget\n";
      return kBudget;
    }
    return kOk;
  }

  Options o;
  std::ostream& out_;
  std::ostream& err_;
};

}  // namespace

void Table::print(std::ostream& out, bool csv) const {
  if (csv) {
    for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << csv_field(header[i]);
    out << "\n";
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << csv_field(r[i]);
      out << "\n";
    }
    return;
  }
  std::vector<std::size_t> width(header.size());
  for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
  for (const auto& r : rows)
    for (std::size_t i = 0; i < r.size() && i < width.size(); ++i) width[i] = std::max(width[i], r[i].size());
  auto line = [&](const std::vector<std::string>& cells) {
    std::string s;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      s += cells[i];
      if (i + 1 < cells.size()) s += std::string(width[i] - cells[i].size() + 2, ' ');
    }
    out << s << "\n";
  };
  line(header);
  for (const auto& r : rows) line(r);
}

std::string certified_decimal(const Enclosure& e, std::size_t max_digits) {
  if (!e.bounded()) return "-";
  const Rational& lo = e.lo();
  const Rational& hi = *e.hi();
  if (lo.floor() != hi.floor()) return "-";
  std::size_t k = 0;
  BigInt scale = 1;
  while (k < max_digits) {
    const BigInt next = scale * 10;
    if ((lo * Rational(next)).floor() != (hi * Rational(next)).floor()) break;
    scale = next;
    ++k;
  }
  const BigInt scaled = (lo * Rational(scale)).floor();
  const BigInt int_part = lo.floor();
  std::string out = int_part.get_str();
  if (k > 0) {
    std::string frac = BigInt(scaled - int_part * scale).get_str();
    out += "." + std::string(k - frac.size(), '0') + frac;
  }
  return out + "...";
}

std::string certified_binary(const Enclosure& e, std::size_t max_digits) {
  if (!e.bounded() || e.lo().sign() < 0) return "-";
  const DigitResult d = digits(e, max_digits);
  if (d.determined_count == 0) return "-";
  return d.integer_part.get_str() + "." + d.digits.str() + "...";
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Runner r(out, err);
  Options& o = r.o;
  CLI::App app{"Zeta and Omega numbers of machine domains with certified rational enclosures", "tuatara"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--budget", o.budget, "stream elements to enumerate (default 100000)");
  app.add_option("--digits", o.digits, "digits to certify in reports (default 10)");
  app.add_option("--format", o.format, "table or csv")->check(CLI::IsMember({"table", "csv"}));
  app.add_option("--machine", o.machine_path, "machine description file");
  app.add_option("-s", o.s_text, "exponent s as a/b or a decimal (default 1)");

  std::function<int()> action;
  auto on = [&](CLI::App* sub, std::function<int()> f) { sub->callback([&action, f] { action = f; }); };

  for (const char* name : {"zeta", "omega"}) {
    const std::string q = name;
    on(app.add_subcommand(name, q == "zeta" ? "zeta number: sum of 1/n over bin(n) in the domain"
                                            : "Omega number: sum of 2^-|p| over the domain"),
       [&r, q] {
         const MachineSpec m = load_machine(r.o);
         const Enclosure e = q == "zeta" ? zeta_enclosure(m, r.o.budget) : omega_enclosure(m, r.o.budget);
         return r.enclosure_row(q, m, Rational(1), e);
       });
  }
  for (const char* name : {"zeta-s", "omega-s", "kappa", "kappa-natural"}) {
    const std::string q = name;
    on(app.add_subcommand(name, "s-parameterized sum (" + q + ")"), [&r, q] {
      const MachineSpec m = load_machine(r.o);
      const Rational s = r.o.s();
      Enclosure e;
      if (q == "zeta-s") e = zeta_s(m, s, r.o.budget);
      if (q == "omega-s") e = omega_s(m, s, r.o.budget);
      if (q == "kappa") e = kappa(m, s, r.o.budget);
      if (q == "kappa-natural") e = kappa_natural(m, s, r.o.budget);
      return r.enclosure_row(q, m, s, e);
    });
  }

  on(app.add_subcommand("classify", "divergent / convergent / tuatara verdicts"), [&r] {
    const MachineSpec m = load_machine(r.o);
    const Classification c = classify(m, r.o.budget);
    Table t{{"weight", "verdict", "certified", "lo", "hi"}, {}};
    for (const auto& [name, v] : {std::pair{"zeta", c.zeta}, std::pair{"omega", c.omega}})
      t.rows.push_back({name, to_string(v.cls), v.certified ? "yes" : "no", v.witness.lo().to_string(),
                        hi_text(v.witness)});
    t.print(r.out_, r.o.csv());
    return kOk;
  });

  std::string egyptian_q;
  std::string egyptian_floor_text = "2";
  auto* eg = app.add_subcommand("egyptian", "distinct unit fractions with denominators >= N summing to Q");
  eg->add_option("Q", egyptian_q, "positive rational")->required();
  eg->add_option("--floor", egyptian_floor_text, "least denominator N (default 2)");
  on(eg, [&] {
    const EgyptianExpansion x = egyptian_floor(Rational::parse(egyptian_q), parse_integer(egyptian_floor_text));
    if (o.csv()) {
      Table t{{"index", "phase", "denominator"}, {}};
      std::size_t i = 0;
      for (const auto& d : x.harmonic) t.rows.push_back({std::to_string(++i), "harmonic", d.get_str()});
      for (const auto& d : x.greedy) t.rows.push_back({std::to_string(++i), "greedy", d.get_str()});
      t.print(out, true);
    } else {
      std::string line;
      for (const auto& d : x.denominators()) line += (line.empty() ? "1/" : " + 1/") + d.get_str();
      out << (line.empty() ? "0" : line) << "\n";
    }
    return kOk;
  });

  std::vector<std::string> kraft_lengths;
  auto* kr = app.add_subcommand("kraft", "online prefix-free code for the requested lengths");
  kr->add_option("lengths", kraft_lengths, "codeword lengths")->required();
  on(kr, [&] {
    std::vector<std::uint64_t> lengths;
    for (const auto& l : kraft_lengths) lengths.push_back(parse_integer(l).get_ui());
    const CodeAssignment code = kraft_chaitin(lengths);
    Table t{{"index", "length", "word"}, {}};
    for (std::size_t i = 0; i < code.words.size(); ++i)
      t.rows.push_back({std::to_string(i + 1), std::to_string(code.lengths[i]), code.words[i].render()});
    t.print(out, o.csv());
    return kOk;
  });

  std::vector<std::string> grid_denominators;
  std::uint64_t grid_terms = 20;
  auto* gr = app.add_subcommand("grid", "dyadic diagonal of 1/m fed into Kraft-Chaitin");
  gr->add_option("denominators", grid_denominators, "denominators m >= 2 (or use --machine)");
  gr->add_option("--terms", grid_terms, "terms to emit (default 20)");
  bool grid_words = false;
  gr->add_flag("--words", grid_words, "also assign Kraft-Chaitin codewords to the terms");
  on(gr, [&] {
    DyadicDiagonal::Source source;
    if (!grid_denominators.empty()) {
      auto list = std::make_shared<std::vector<BigInt>>();
      for (const auto& d : grid_denominators) list->push_back(parse_integer(d));
      auto pos = std::make_shared<std::size_t>(0);
      source = [list, pos]() -> std::optional<BigInt> {
        if (*pos == list->size()) return std::nullopt;
        return (*list)[(*pos)++];
      };
    } else {
      auto stream = std::shared_ptr<DomainStream>(domain_stream(load_machine(o)));
      source = [stream]() -> std::optional<BigInt> {
        while (auto e = stream->next())
          if (e->certain) return bin_inv(e->word);
        return std::nullopt;
      };
    }
    // Remember which denominator fed each row.
    auto rows = std::make_shared<std::vector<BigInt>>();
    DyadicDiagonal grid([source, rows]() -> std::optional<BigInt> {
      auto d = source();
      if (d) rows->push_back(*d);
      return d;
    });
    KraftChaitin kc;
    Table t{{"index", "row", "denominator", "term"}, {}};
    if (grid_words) t.header.push_back("word");
    for (std::uint64_t i = 0; i < grid_terms; ++i) {
      auto term = grid.next();
      if (!term) break;
      t.rows.push_back({std::to_string(i + 1), std::to_string(term->row + 1), (*rows)[term->row].get_str(),
                        term->value().to_string()});
      if (grid_words) t.rows.back().push_back(kc.assign(term->exponent).render());
    }
    t.print(out, o.csv());
    return kOk;
  });

  std::string fresh_threshold;
  auto* fr = app.add_subcommand("fresh-index", "first index missed once the zeta partial sum passes 0.y");
  fr->add_option("--threshold", fresh_threshold, "binary digits y")->required();
  on(fr, [&] {
    const MachineSpec m = load_machine(o);
    const FreshIndex f = fresh_index(m, parse_bits(fresh_threshold), o.budget);
    Table t{{"word", "index", "enumerated", "sum"}, {}};
    t.rows.push_back({f.word.render(), f.index.get_str(), std::to_string(f.enumerated.size()), f.sum.to_string()});
    t.print(out, o.csv());
    return kOk;
  });

  std::string density_n;
  auto* de = app.add_subcommand("density", "log2(#domain strings of length <= n) / n");
  de->add_option("n", density_n, "length bound")->required();
  on(de, [&] {
    const MachineSpec m = load_machine(o);
    const std::uint64_t n = parse_integer(density_n).get_ui();
    const Enclosure e = density_enclosure(m, n);
    Table t{{"n", "count", "lo", "hi", "decimal"}, {}};
    t.rows.push_back({std::to_string(n), count_up_to_length(m, static_cast<std::int64_t>(n))->get_str(),
                      e.lo().to_string(), hi_text(e), certified_decimal(e, o.digits)});
    t.print(out, o.csv());
    return kOk;
  });

  // iota
  auto* io = app.add_subcommand("iota", "Iota programs");
  io->require_subcommand(1);
  std::string iota_arg;
  std::uint64_t iota_steps = iota::kDefaultSteps;
  std::uint64_t iota_nodes = iota::kDefaultNodes;
  auto* ip = io->add_subcommand("parse", "parse a program and print its combinator term");
  ip->add_option("program", iota_arg)->required();
  on(ip, [&] {
    const auto term = iota::CombTerm::from_iota(iota::parse_text(iota_arg));
    Table t{{"program", "term", "size"}, {}};
    t.rows.push_back({iota::parse_text(iota_arg).unparse().render(), term.to_string(), std::to_string(term.size())});
    if (o.csv())
      t.print(out, true);
    else
      out << term.to_string() << "\n";
    return kOk;
  });
  auto* irun = io->add_subcommand("run", "reduce a program to normal form");
  irun->add_option("program", iota_arg)->required();
  irun->add_option("--steps", iota_steps, "reduction step budget (default 100000)");
  irun->add_option("--nodes", iota_nodes, "term size budget (default 1000000)");
  on(irun, [&] {
    const auto outcome =
        iota::reduce(iota::CombTerm::from_iota(iota::parse_text(iota_arg)), iota_steps, iota_nodes);
    Table t{{"normal", "steps", "size", "term"}, {}};
    t.rows.push_back({outcome.normal ? "yes" : "no", std::to_string(outcome.steps), std::to_string(outcome.max_size),
                      outcome.term ? outcome.term->to_string() : "-"});
    t.print(out, o.csv());
    if (!outcome.normal) {
      err << "reduction budget exceeded\n";
      return kBudget;
    }
    return kOk;
  });
  auto* ienc = io->add_subcommand("encode", "encode a bit string as an Iota list");
  ienc->add_option("bits", iota_arg)->required();
  on(ienc, [&] {
    out << iota::encode_bits(parse_bits(iota_arg)).str() << "\n";
    return kOk;
  });
  auto* idec = io->add_subcommand("decode", "read an Iota list back into bits");
  idec->add_option("program", iota_arg)->required();
  idec->add_option("--steps", iota_steps, "reduction step budget (default 100000)");
  idec->add_option("--nodes", iota_nodes, "term size budget (default 1000000)");
  on(idec, [&] {
    out << iota::decode_bits(iota::parse_text(iota_arg).unparse(), iota_steps, iota_nodes).render() << "\n";
    return kOk;
  });
  auto* icount = io->add_subcommand("count", "number of programs of exactly L bits");
  icount->add_option("length", iota_arg)->required();
  on(icount, [&] {
    out << iota::count_programs(parse_integer(iota_arg).get_ui()).get_str() << "\n";
    return kOk;
  });
  auto* izeta = io->add_subcommand("zeta", "zeta partial sum over programs of length <= 2n-1");
  izeta->add_option("n", iota_arg)->required();
  on(izeta, [&] {
    const Enclosure e = iota::iota_zeta_partial(parse_integer(iota_arg).get_ui());
    Table t{{"n", "lo", "hi", "decimal", "binary"}, {}};
    t.rows.push_back({iota_arg, e.lo().to_string(), hi_text(e), certified_decimal(e, o.digits),
                      certified_binary(e, o.digits)});
    t.print(out, o.csv());
    return kOk;
  });

  std::string complexity_x;
  std::string complexity_measure = "plain";
  auto* na = app.add_subcommand("nabla", "least n with V(bin(n)) = x");
  na->add_option("x", complexity_x, "target string (eps for the empty string)")->required();
  on(na, [&] {
    const MachineSpec m = load_machine(o);
    const BitString x = parse_bits(complexity_x);
    return r.complexity_row("nabla", m, x, nabla(m, x, o.budget));
  });
  auto* cx = app.add_subcommand("complexity", "least witness for x under a measure");
  cx->add_option("x", complexity_x, "target string (eps for the empty string)")->required();
  cx->add_option("--measure", complexity_measure, "plain, h, nabla or nabla-log (default plain)");
  on(cx, [&] {
    const MachineSpec m = load_machine(o);
    const BitString x = parse_bits(complexity_x);
    return r.complexity_row(complexity_measure, m, x, measure(parse_measure(complexity_measure), m, x, o.budget));
  });

  std::string deficiency_digits;
  auto* df = app.add_subcommand("deficiency", "complexity of each prefix against m/s");
  df->add_option("digits", deficiency_digits, "binary digits whose prefixes are measured")->required();
  df->add_option("--measure", complexity_measure, "plain, h, nabla or nabla-log (default plain)");
  on(df, [&] {
    const MachineSpec m = load_machine(o);
    const DeficiencyReport rep =
        deficiency(parse_bits(deficiency_digits), o.s(), parse_measure(complexity_measure), m, o.budget);
    Table t{{"m", "complexity", "threshold", "slack", "nabla_statistic", "exact"}, {}};
    for (const auto& row : rep.rows)
      t.rows.push_back({std::to_string(row.m), optional_text(row.complexity), row.threshold.to_string(),
                        optional_text(row.slack), optional_text(row.nabla_statistic), row.exact ? "yes" : "no"});
    t.print(out, o.csv());
    if (!o.csv()) out << "worst_slack " << optional_text(rep.worst_slack) << "\n";
    for (const auto& row : rep.rows)
      if (!row.complexity && !row.exact) return kBudget;
    return kOk;
  });

  on(app.add_subcommand("sanity", "1 >= Omega >= zeta >= Omega/2 >= 0 on a finite prefix-free machine"), [&] {
    const ChainReport c = sanity_chain(load_machine(o));
    Table t{{"omega", "zeta", "holds", "strict_expected", "strict_holds"}, {}};
    t.rows.push_back({c.omega.to_string(), c.zeta.to_string(), c.holds ? "yes" : "no",
                      c.strict_expected ? "yes" : "no", c.strict_holds ? "yes" : "no"});
    t.print(out, o.csv());
    return kOk;
  });

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  try {
    return action ? action() : kUsage;
  } catch (const BudgetExhausted& e) {
    err << "budget exhausted: " << e.what() << "\n";
    return kBudget;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kComputation;
  }
}

}  // namespace tuatara::cli
