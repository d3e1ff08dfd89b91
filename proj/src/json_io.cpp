//
// Scenario documents in, deterministic reports out.
//
// A scenario is one JSON object: name, task, optional seed and format,
// an instance block (explicit elements or a seeded generator recipe), an
// optional colouring block (a named construction with parameters), and a
// bounds block whose fields depend on the task.  Every extraction goes
// through a cursor that tracks its JSON-pointer path, so a malformed field
// is reported as exactly where it sits in the document.  Reports embed the
// tool version and the fully resolved parameter set; all mathematical
// values are rendered as exact strings, object keys are sorted by the
// JSON library, and nothing time- or locale-dependent is ever emitted, so
// identical (scenario, seed) pairs produce identical bytes.

#include "fsr/json_io.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "fsr/colouring.hpp"
#include "fsr/condense.hpp"
#include "fsr/fssets.hpp"
#include "fsr/group.hpp"
#include "fsr/instances.hpp"
#include "fsr/ordinal.hpp"
#include "fsr/ordinal_set.hpp"
#include "fsr/presentation.hpp"
#include "fsr/rng.hpp"
#include "fsr/witness.hpp"

namespace fsr {
namespace {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Path-tracked JSON access.

class Cursor {
 public:
  Cursor(const json& node, std::string path)
      : node_(&node), path_(std::move(path)) {}

  const json& node() const { return *node_; }
  const std::string& path() const { return path_; }

  [[noreturn]] void fail(const std::string& message) const {
    throw scenario_error(path_.empty() ? "/" : path_, message);
  }

  bool has(const std::string& key) const {
    return node_->is_object() && node_->contains(key);
  }

  Cursor at(const std::string& key) const {
    if (!node_->is_object()) fail("expected an object");
    auto it = node_->find(key);
    if (it == node_->end()) fail("missing required field \"" + key + "\"");
    return Cursor(*it, path_ + "/" + key);
  }

  std::optional<Cursor> opt(const std::string& key) const {
    if (!node_->is_object()) fail("expected an object");
    auto it = node_->find(key);
    if (it == node_->end()) return std::nullopt;
    return Cursor(*it, path_ + "/" + key);
  }

  std::size_t array_size() const {
    if (!node_->is_array()) fail("expected an array");
    return node_->size();
  }

  Cursor item(std::size_t i) const {
    return Cursor((*node_)[i], path_ + "/" + std::to_string(i));
  }

  std::string str() const {
    if (!node_->is_string()) fail("expected a string");
    return node_->get<std::string>();
  }

  std::uint64_t u64() const {
    if (node_->is_number_unsigned()) return node_->get<std::uint64_t>();
    fail("expected a nonnegative integer");
  }

  std::int64_t i64() const {
    if (node_->is_number_integer()) return node_->get<std::int64_t>();
    fail("expected an integer");
  }

 private:
  const json* node_;
  std::string path_;
};

// ---------------------------------------------------------------------------
// Value codecs.  All numbers that can outgrow 64 bits travel as strings.

mpz_class parse_mpz(const Cursor& c) {
  if (c.node().is_number_integer())
    return mpz_class(static_cast<long>(c.i64()));
  if (c.node().is_string()) {
    try {
      return mpz_class(c.str());
    } catch (const std::invalid_argument&) {
      c.fail("not an integer: \"" + c.str() + "\"");
    }
  }
  c.fail("expected an integer or an integer string");
}

Ordinal parse_ordinal(const Cursor& c) {
  std::string text = c.str();
  try {
    return Ordinal::parse(text);
  } catch (const std::exception& e) {
    c.fail(std::string("bad ordinal: ") + e.what());
  }
}

SignaturePtr decode_signature(const Cursor& c) {
  std::vector<GroupSignature::Coordinate> coords;
  std::size_t count = c.array_size();
  for (std::size_t i = 0; i < count; ++i) {
    Cursor pair = c.item(i);
    if (pair.array_size() != 2)
      pair.fail("expected [ordinal, \"Q\" or prime]");
    GroupSignature::Coordinate coord;
    coord.index = parse_ordinal(pair.item(0));
    Cursor kind = pair.item(1);
    if (kind.node().is_string()) {
      if (kind.str() != "Q") kind.fail("expected \"Q\" or a prime number");
      coord.kind = GroupSignature::Kind::rational;
    } else {
      coord.kind = GroupSignature::Kind::prufer;
      coord.p = kind.u64();
    }
    coords.push_back(std::move(coord));
  }
  try {
    return make_signature(std::move(coords));
  } catch (const std::invalid_argument& e) {
    c.fail(e.what());
  }
}

CoordinateValue decode_value(const Cursor& c,
                             const GroupSignature::Coordinate& coord) {
  if (coord.kind == GroupSignature::Kind::rational) {
    if (!c.has("num"))
      c.fail("coordinate " + coord.index.to_string() +
             " is rational; expected {\"num\", \"den\"}");
    mpz_class num = parse_mpz(c.at("num"));
    mpz_class den = 1;
    if (auto d = c.opt("den")) den = parse_mpz(*d);
    if (den == 0) c.at("den").fail("denominator must be nonzero");
    return RationalValue(std::move(num), std::move(den));
  }
  if (!c.has("a"))
    c.fail("coordinate " + coord.index.to_string() +
           " is a Prufer coordinate; expected {\"a\", \"n\"}");
  mpz_class a = parse_mpz(c.at("a"));
  std::uint64_t n = c.at("n").u64();
  if (n > 64) c.at("n").fail("exponent out of range (at most 64)");
  return PruferValue(coord.p, std::move(a), static_cast<std::uint32_t>(n));
}

DirectSumElement decode_element(const Cursor& c, const SignaturePtr& sig) {
  Cursor entries = c.at("entries");
  std::vector<DirectSumElement::Entry> list;
  std::size_t count = entries.array_size();
  for (std::size_t i = 0; i < count; ++i) {
    Cursor entry = entries.item(i);
    if (entry.array_size() != 2) entry.fail("expected [ordinal, value]");
    Ordinal idx = parse_ordinal(entry.item(0));
    const GroupSignature::Coordinate* coord = sig->find(idx);
    if (!coord)
      entry.item(0).fail("coordinate " + idx.to_string() +
                         " is not in the signature");
    list.emplace_back(idx, decode_value(entry.item(1), *coord));
  }
  try {
    return DirectSumElement(sig, std::move(list));
  } catch (const std::invalid_argument& e) {
    c.fail(e.what());
  }
}

FiniteOrdinalSet decode_ordinal_set(const Cursor& c) {
  std::vector<Ordinal> elems;
  std::size_t count = c.array_size();
  for (std::size_t i = 0; i < count; ++i)
    elems.push_back(parse_ordinal(c.item(i)));
  return FiniteOrdinalSet(std::move(elems));
}

json encode_value(const CoordinateValue& v) {
  if (const auto* q = std::get_if<RationalValue>(&v)) {
    return json{{"num", q->numerator().get_str()},
                {"den", q->denominator().get_str()}};
  }
  const auto& z = std::get<PruferValue>(v);
  return json{{"a", z.a().get_str()}, {"n", z.n()}};
}

json encode_element(const DirectSumElement& x) {
  json entries = json::array();
  for (const auto& [idx, val] : x.entries())
    entries.push_back(json::array({idx.to_string(), encode_value(val)}));
  return json{{"entries", std::move(entries)}};
}

json encode_set(const FiniteOrdinalSet& s) {
  json out = json::array();
  for (const Ordinal& a : s.elements()) out.push_back(a.to_string());
  return out;
}

json encode_signature(const GroupSignature& sig) {
  json out = json::array();
  for (const auto& coord : sig.coordinates()) {
    json kind = coord.kind == GroupSignature::Kind::rational
                    ? json("Q")
                    : json(coord.p);
    out.push_back(json::array({coord.index.to_string(), std::move(kind)}));
  }
  return out;
}

json encode_record(const SumRecord& r) {
  return json{{"generators", r.generators}, {"value", encode_element(r.value)}};
}

// ---------------------------------------------------------------------------
// Instance construction.

struct Instance {
  std::vector<DirectSumElement> elements;
  std::vector<std::vector<DirectSumElement>> parts;
  bool has_parts = false;
};

DirectSumElement unit_vector(const SignaturePtr& sig, std::uint64_t i) {
  return DirectSumElement(
      sig, {{Ordinal::natural(i), RationalValue::integer(1)}});
}

SignaturePtr rational_signature(std::uint64_t width) {
  std::vector<GroupSignature::Coordinate> coords(width);
  for (std::uint64_t i = 0; i < width; ++i)
    coords[i].index = Ordinal::natural(i);
  return make_signature(std::move(coords));
}

Instance build_instance(const Cursor& c, std::uint64_t seed, bool seed_given) {
  Instance out;
  std::string kind = c.has("kind") ? c.at("kind").str() : "elements";
  if (!seed_given && (kind == "random-rational" || kind == "delta-family"))
    throw scenario_error(
        "/seed", "randomized instance recipes need an explicit seed");
  if (kind == "elements" || kind == "parts") {
    SignaturePtr sig = decode_signature(c.at("signature"));
    if (kind == "elements") {
      Cursor elems = c.at("elements");
      std::size_t count = elems.array_size();
      for (std::size_t i = 0; i < count; ++i)
        out.elements.push_back(decode_element(elems.item(i), sig));
    } else {
      out.has_parts = true;
      Cursor parts = c.at("parts");
      std::size_t count = parts.array_size();
      for (std::size_t i = 0; i < count; ++i) {
        Cursor part = parts.item(i);
        std::vector<DirectSumElement> block;
        std::size_t inner = part.array_size();
        for (std::size_t j = 0; j < inner; ++j)
          block.push_back(decode_element(part.item(j), sig));
        out.parts.push_back(std::move(block));
      }
    }
    return out;
  }
  if (kind == "random-rational") {
    std::uint64_t count = c.at("count").u64();
    std::uint64_t width = c.at("width").u64();
    if (count == 0) c.at("count").fail("count must be positive");
    if (width == 0 || width > 64)
      c.at("width").fail("width must be between 1 and 64");
    SignaturePtr sig = rational_signature(width);
    Rng rng(mix_string(seed, "random-rational"));
    for (std::uint64_t i = 0; i < count; ++i) {
      std::map<std::uint64_t, CoordinateValue> entries;
      std::uint64_t terms = 1 + rand_below(rng, std::min<std::uint64_t>(width, 2));
      while (entries.size() < terms) {
        std::uint64_t coord = rand_below(rng, width);
        mpz_class num(static_cast<long>(1 + rand_below(rng, 5)));
        if (rand_below(rng, 2)) num = -num;
        mpz_class den(static_cast<long>(1 + rand_below(rng, 4)));
        entries.emplace(coord, RationalValue(num, den));
      }
      std::vector<DirectSumElement::Entry> list;
      for (auto& [coord, val] : entries)
        list.emplace_back(Ordinal::natural(coord), std::move(val));
      out.elements.emplace_back(sig, std::move(list));
    }
    return out;
  }
  if (kind == "delta-family") {
    std::uint64_t size = c.at("size").u64();
    if (size < 2 || size > 256)
      c.at("size").fail("size must be between 2 and 256");
    Rng rng(mix_string(seed, "delta-family"));
    out.elements = make_condensation_input(rng, size);
    return out;
  }
  if (kind == "unit-basis") {
    std::uint64_t width = c.at("width").u64();
    if (width == 0 || width > 64)
      c.at("width").fail("width must be between 1 and 64");
    SignaturePtr sig = rational_signature(width);
    for (std::uint64_t i = 0; i < width; ++i)
      out.elements.push_back(unit_vector(sig, i));
    return out;
  }
  c.at("kind").fail("unknown instance kind \"" + kind + "\"");
}

// ---------------------------------------------------------------------------
// Named colourings.

std::uint64_t require_space(const Cursor& c) {
  std::uint64_t space = c.at("space").u64();
  if (space == 0) c.at("space").fail("colour space must be positive");
  return space;
}

ElementColouring build_element_colouring(const Cursor& c) {
  std::string kind = c.at("kind").str();
  std::uint64_t space = require_space(c);
  if (kind == "constant") {
    std::uint64_t value = c.at("value").u64();
    if (value >= space) c.at("value").fail("value outside the colour space");
    return {space, [value](const DirectSumElement&) { return value; }};
  }
  if (kind == "support-size-mod") {
    return {space, [space](const DirectSumElement& x) {
              return x.support().size() % space;
            }};
  }
  if (kind == "hash-mod") {
    return {space, [space](const DirectSumElement& x) {
              return fnv1a(x.to_string()) % space;
            }};
  }
  c.at("kind").fail("unknown element colouring \"" + kind + "\"");
}

SetColouring build_set_colouring(const Cursor& c) {
  std::string kind = c.at("kind").str();
  std::uint64_t space = require_space(c);
  if (kind == "constant") {
    std::uint64_t value = c.at("value").u64();
    if (value >= space) c.at("value").fail("value outside the colour space");
    return {space, [value](const FiniteOrdinalSet&) { return value; }};
  }
  if (kind == "cardinality-mod") {
    return {space,
            [space](const FiniteOrdinalSet& s) { return s.size() % space; }};
  }
  if (kind == "log-parity") return make_log_parity_colouring(space);
  if (kind == "min-mod") {
    return {space, [space](const FiniteOrdinalSet& s) -> std::uint64_t {
              if (s.empty()) return 0;
              const Ordinal& least = s.min();
              if (least.is_natural()) return least.natural_value() % space;
              return fnv1a(least.to_string()) % space;
            }};
  }
  if (kind == "hash-mod") {
    return {space, [space](const FiniteOrdinalSet& s) {
              std::uint64_t h = 14695981039346656037ull;
              for (const Ordinal& a : s.elements())
                h = mix_string(h, a.to_string());
              return h % space;
            }};
  }
  if (kind == "adjacency-gaps") {
    // Doubleton rule: colour 1 exactly when max - min is one of the listed
    // natural gaps.  Everything else (including non-natural elements) is 0.
    Cursor gaps = c.at("gaps");
    std::set<std::uint64_t> hits;
    std::size_t count = gaps.array_size();
    for (std::size_t i = 0; i < count; ++i) hits.insert(gaps.item(i).u64());
    if (space < 2) c.at("space").fail("adjacency-gaps needs space >= 2");
    return {space, [hits](const FiniteOrdinalSet& s) -> std::uint64_t {
              if (s.size() < 2) return 0;
              if (!s.min().is_natural() || !s.max().is_natural()) return 0;
              std::uint64_t gap = s.max().natural_value() -
                                  s.min().natural_value();
              return hits.count(gap) ? 1 : 0;
            }};
  }
  if (kind == "table") {
    std::uint64_t fallback = c.at("default").u64();
    if (fallback >= space) c.at("default").fail("value outside the colour space");
    auto table = std::make_shared<std::map<std::string, std::uint64_t>>();
    Cursor entries = c.at("entries");
    std::size_t count = entries.array_size();
    for (std::size_t i = 0; i < count; ++i) {
      Cursor entry = entries.item(i);
      if (entry.array_size() != 2) entry.fail("expected [set, colour]");
      FiniteOrdinalSet key = decode_ordinal_set(entry.item(0));
      std::uint64_t value = entry.item(1).u64();
      if (value >= space) entry.item(1).fail("value outside the colour space");
      (*table)[key.to_string()] = value;
    }
    return {space, [table, fallback](const FiniteOrdinalSet& s) {
              auto it = table->find(s.to_string());
              return it == table->end() ? fallback : it->second;
            }};
  }
  c.at("kind").fail("unknown set colouring \"" + kind + "\"");
}

// ---------------------------------------------------------------------------
// Task runners.  Each returns (result object, check passed).

struct TaskOutcome {
  json result;
  bool ok = true;
};

TaskOutcome run_coverage(const Instance& inst, const ElementColouring& c,
                         std::uint64_t max_terms) {
  std::vector<SumRecord> records = fs(inst.elements, max_terms);
  CoverageReport report = coverage(c, records);
  json attained = json::array();
  for (const auto& [colour, info] : report.attained)
    attained.push_back(json{{"colour", colour},
                            {"count", info.count},
                            {"exemplar", encode_record(info.exemplar)}});
  json missing = json::array();
  for (std::uint64_t colour : report.missing) missing.push_back(colour);
  json result{{"record_count", records.size()},
              {"colour_space", report.colour_space},
              {"attained", std::move(attained)},
              {"missing", std::move(missing)}};
  // Coverage is informational: missing colours are a finding, not a failure.
  return {std::move(result), true};
}

TaskOutcome run_witness(const Instance& inst, const ElementColouring& c,
                        std::uint64_t delta, const std::string& mode_name,
                        const WitnessMode& mode) {
  std::optional<SumRecord> found = find_witness(c, inst.elements, delta, mode);
  json result{{"mode", mode_name}, {"delta", delta}, {"found", found.has_value()}};
  result["witness"] = found ? encode_record(*found) : json(nullptr);
  return {std::move(result), found.has_value()};
}

TaskOutcome run_axiom_check(const FiniteOrdinalSet& x, const FiniteOrdinalSet& y,
                            const SetColouring& d, std::uint64_t delta) {
  std::set<std::uint64_t> values = sandwich_values(d, x, y);
  bool holds = check_axiom_pair(d, x, y, delta);
  json sandwich = json::array();
  for (std::uint64_t v : values) sandwich.push_back(v);
  json result{{"x", encode_set(x)},
              {"y", encode_set(y)},
              {"delta", delta},
              {"sandwich_values", std::move(sandwich)},
              {"holds", holds}};
  return {std::move(result), holds};
}

TaskOutcome run_condense(const Instance& inst, std::size_t target,
                         std::uint64_t seed) {
  CondensationResult res = condense(inst.elements, target, seed);
  json outputs = json::array();
  for (const auto& y : res.outputs) outputs.push_back(encode_element(y));
  json blocks = json::array();
  for (const auto& block : res.certificate.blocks) blocks.push_back(block);
  json result{{"ok", res.ok},
              {"requested", target},
              {"achieved", res.ok ? res.outputs.size() : res.achieved},
              {"outputs", std::move(outputs)},
              {"certificate",
               json{{"blocks", std::move(blocks)},
                    {"root", encode_set(res.certificate.root_infinite)},
                    {"multiplier", res.certificate.multiplier.get_str()}}}};
  bool ok = res.ok;
  if (res.ok) {
    CondensationCheck check =
        verify_condensation(inst.elements, res.outputs, res.certificate);
    result["recheck"] = json{{"ok", check.ok}, {"failure", check.failure}};
    ok = check.ok;
  } else {
    result["shortfall"] = res.shortfall;
  }
  return {std::move(result), ok};
}

TaskOutcome run_embed(const AbelianPresentation& p, std::uint32_t word_bound) {
  Embedding e = embed_fg_abelian(p);
  EmbeddingCheck check = verify_embedding(p, e, word_bound);
  json torsion = json::array();
  for (const auto& t : e.structure.torsion) torsion.push_back(t.get_str());
  json images = json::array();
  for (const auto& g : e.generator_images) images.push_back(encode_element(g));
  json result{{"structure", json{{"torsion", std::move(torsion)},
                                 {"free_rank", e.structure.free_rank}}},
              {"signature", encode_signature(*e.signature)},
              {"generator_images", std::move(images)},
              {"check", json{{"ok", check.ok},
                             {"word_bound", word_bound},
                             {"failure", check.failure}}}};
  return {std::move(result), check.ok};
}

TaskOutcome run_partition_check(std::uint64_t n, std::uint64_t lambda,
                                std::uint64_t mu, std::uint64_t theta,
                                const SetColouring& d) {
  PartitionCheckResult res = brute_force_partition_check(n, lambda, mu, theta, d);
  json result{{"n", n},
              {"lambda", lambda},
              {"mu", mu},
              {"theta", theta},
              {"holds", res.holds}};
  if (!res.holds) {
    result["counterexample"] = res.counterexample;
    result["colour"] = res.colour;
    result["colour_missing"] = res.colour_missing;
  }
  return {std::move(result), res.holds};
}

TaskOutcome run_replay_multicube(const MulticubeParams& params,
                                 std::uint64_t max_pick, const Cursor& bounds) {
  auto f = std::make_shared<WitnessF>();
  std::unique_ptr<MulticubeInstance> inst;
  try {
    inst = std::make_unique<MulticubeInstance>(params, f);
  } catch (const std::invalid_argument& e) {
    bounds.fail(e.what());
  }
  json minima = json::array();
  for (const Ordinal& a : inst->window_minima()) minima.push_back(a.to_string());
  json replays = json::array();
  bool all_match = true;
  std::uint64_t masks = std::uint64_t{1} << params.window;
  for (std::uint64_t mask = 0; mask < masks; ++mask) {
    if (static_cast<std::uint64_t>(std::popcount(mask)) > max_pick) continue;
    std::vector<std::size_t> pick;
    for (std::uint64_t b = 0; b < params.window; ++b)
      if (mask & (std::uint64_t{1} << b)) pick.push_back(b);
    MulticubeInstance::Replay r = inst->replay(pick);
    all_match = all_match && r.match();
    replays.push_back(json{{"pick", pick},
                           {"k", r.k},
                           {"image", encode_set(r.actual)},
                           {"match", r.match()}});
  }
  json result{{"a", params.a},
              {"b", params.b},
              {"m", params.m},
              {"n", params.n},
              {"window", params.window},
              {"max_pick", max_pick},
              {"pool_size", inst->pool_size()},
              {"window_minima", std::move(minima)},
              {"replays", std::move(replays)},
              {"all_match", all_match}};
  return {std::move(result), all_match};
}

// ---------------------------------------------------------------------------
// Rendering.

std::string render_csv_coverage(const json& envelope) {
  const json& result = envelope.at("result");
  std::string out;
  out += "# fsrainbow ";
  out += kToolVersion;
  out += "\n# name,";
  out += envelope.at("name").get<std::string>();
  out += "\n# seed,";
  out += std::to_string(envelope.at("parameters").at("seed").get<std::uint64_t>());
  out += "\ncolour,count\n";
  std::uint64_t space = result.at("colour_space").get<std::uint64_t>();
  std::map<std::uint64_t, std::uint64_t> counts;
  for (const json& row : result.at("attained"))
    counts[row.at("colour").get<std::uint64_t>()] =
        row.at("count").get<std::uint64_t>();
  for (std::uint64_t colour = 0; colour < space; ++colour) {
    auto it = counts.find(colour);
    out += std::to_string(colour);
    out += ",";
    out += std::to_string(it == counts.end() ? 0 : it->second);
    out += "\n";
  }
  return out;
}

}  // namespace

ScenarioOutcome run_scenario_text(const std::string& text,
                                  const ScenarioOverrides& overrides) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw scenario_error("/", std::string("not valid JSON: ") + e.what());
  }
  Cursor root(doc, "");
  if (!doc.is_object()) root.fail("expected a scenario object");

  std::string name = root.at("name").str();
  std::string task = root.at("task").str();
  std::uint64_t seed = 0;
  bool seed_given = overrides.seed.has_value();
  if (auto s = root.opt("seed")) {
    seed = s->u64();
    seed_given = true;
  }
  if (overrides.seed) seed = *overrides.seed;
  std::string format = "json";
  if (auto f = root.opt("format")) format = f->str();
  if (overrides.format) format = *overrides.format;
  if (format != "json" && format != "csv")
    throw scenario_error("/format", "format must be \"json\" or \"csv\"");
  if (format == "csv" && task != "coverage")
    throw scenario_error("/format",
                         "csv output is only defined for coverage reports");

  // The bounds block; a missing block reads as empty so defaults apply.
  json empty_bounds = json::object();
  Cursor bounds = root.has("bounds") ? root.at("bounds")
                                     : Cursor(empty_bounds, "/bounds");
  auto bound_u64 = [&](const std::string& key,
                       std::optional<std::uint64_t> fallback) -> std::uint64_t {
    if (auto b = bounds.opt(key)) return b->u64();
    if (fallback) return *fallback;
    bounds.fail("missing required field \"" + key + "\"");
  };

  json resolved_bounds = json::object();
  TaskOutcome outcome;

  if (task == "coverage" || task == "witness") {
    Instance inst = build_instance(root.at("instance"), seed, seed_given);
    ElementColouring colouring = build_element_colouring(root.at("colouring"));
    if (task == "coverage") {
      if (inst.has_parts) root.at("instance").fail("coverage expects elements");
      std::uint64_t max_terms =
          overrides.bound ? *overrides.bound : bound_u64("max_terms", 2);
      if (max_terms == 0) bounds.fail("max_terms must be positive");
      resolved_bounds["max_terms"] = max_terms;
      outcome = run_coverage(inst, colouring, max_terms);
    } else {
      std::uint64_t delta = bound_u64("delta", std::nullopt);
      std::string mode_name = "fs";
      if (auto m = bounds.opt("mode")) mode_name = m->str();
      resolved_bounds["delta"] = delta;
      resolved_bounds["mode"] = mode_name;
      if (mode_name == "fs") {
        std::uint64_t max_terms =
            overrides.bound ? *overrides.bound : bound_u64("max_terms", 2);
        if (max_terms == 0) bounds.fail("max_terms must be positive");
        resolved_bounds["max_terms"] = max_terms;
        outcome = run_witness(inst, colouring, delta, mode_name,
                              FsMode{max_terms});
      } else if (mode_name == "fsn") {
        std::uint64_t n = overrides.bound ? *overrides.bound
                                          : bound_u64("n", 2);
        if (n == 0) bounds.fail("n must be positive");
        resolved_bounds["n"] = n;
        outcome = run_witness(inst, colouring, delta, mode_name, FsnMode{n});
      } else if (mode_name == "sus") {
        if (!inst.has_parts)
          root.at("instance").fail("sus mode expects a parts instance");
        outcome = run_witness(inst, colouring, delta, mode_name,
                              SusMode{inst.parts});
      } else {
        bounds.at("mode").fail("mode must be \"fs\", \"fsn\" or \"sus\"");
      }
    }
  } else if (task == "axiom-check") {
    Cursor inst = root.at("instance");
    FiniteOrdinalSet x = decode_ordinal_set(inst.at("x"));
    FiniteOrdinalSet y = decode_ordinal_set(inst.at("y"));
    if (x == y) inst.at("y").fail("x and y must differ");
    SetColouring d = build_set_colouring(root.at("colouring"));
    std::uint64_t delta = bound_u64("delta", std::nullopt);
    resolved_bounds["delta"] = delta;
    outcome = run_axiom_check(x, y, d, delta);
  } else if (task == "condense") {
    Instance inst = build_instance(root.at("instance"), seed, seed_given);
    if (inst.has_parts || inst.elements.empty())
      root.at("instance").fail("condense expects a nonempty element list");
    std::uint64_t fallback = suggested_condensation_target(inst.elements.size());
    std::uint64_t target =
        overrides.bound ? *overrides.bound : bound_u64("target", fallback);
    if (target == 0) bounds.fail("target must be positive");
    resolved_bounds["target"] = target;
    outcome = run_condense(inst, target, seed);
  } else if (task == "embed") {
    Cursor inst = root.at("instance");
    std::string kind = inst.at("kind").str();
    AbelianPresentation p;
    if (kind == "presentation") {
      p.generators = inst.at("generators").u64();
      if (p.generators == 0 || p.generators > 8)
        inst.at("generators").fail("generators must be between 1 and 8");
      Cursor rows = inst.at("relations");
      std::size_t count = rows.array_size();
      for (std::size_t i = 0; i < count; ++i) {
        Cursor row = rows.item(i);
        if (row.array_size() != p.generators)
          row.fail("relation length must equal the generator count");
        std::vector<mpz_class> cells;
        for (std::size_t j = 0; j < p.generators; ++j)
          cells.push_back(parse_mpz(row.item(j)));
        p.relations.push_back(std::move(cells));
      }
    } else if (kind == "cayley" || kind == "cyclic") {
      CayleyTable table;
      if (kind == "cyclic") {
        std::uint64_t order = inst.at("order").u64();
        if (order == 0 || order > kMaxCayleyElements)
          inst.at("order").fail("order must be between 1 and " +
                                std::to_string(kMaxCayleyElements));
        table.assign(order, std::vector<std::size_t>(order));
        for (std::uint64_t i = 0; i < order; ++i)
          for (std::uint64_t j = 0; j < order; ++j)
            table[i][j] = (i + j) % order;
      } else {
        Cursor rows = inst.at("table");
        std::size_t count = rows.array_size();
        for (std::size_t i = 0; i < count; ++i) {
          Cursor row = rows.item(i);
          std::vector<std::size_t> cells;
          std::size_t inner = row.array_size();
          for (std::size_t j = 0; j < inner; ++j)
            cells.push_back(row.item(j).u64());
          table.push_back(std::move(cells));
        }
      }
      try {
        p = semigroup_to_group(table);
      } catch (const cayley_error& e) {
        (kind == "cyclic" ? inst.at("order") : inst.at("table")).fail(e.what());
      }
    } else {
      inst.at("kind").fail("unknown instance kind \"" + kind + "\"");
    }
    std::uint64_t word_bound =
        overrides.bound ? *overrides.bound : bound_u64("word_bound", 3);
    if (word_bound == 0 || word_bound > 16)
      bounds.fail("word_bound must be between 1 and 16");
    resolved_bounds["word_bound"] = word_bound;
    outcome = run_embed(p, static_cast<std::uint32_t>(word_bound));
  } else if (task == "partition-check") {
    SetColouring d = build_set_colouring(root.at("colouring"));
    std::uint64_t n =
        overrides.bound ? *overrides.bound : bound_u64("n", std::nullopt);
    std::uint64_t lambda = bound_u64("lambda", std::nullopt);
    std::uint64_t mu = bound_u64("mu", std::nullopt);
    std::uint64_t theta = bound_u64("theta", std::nullopt);
    resolved_bounds["n"] = n;
    resolved_bounds["lambda"] = lambda;
    resolved_bounds["mu"] = mu;
    resolved_bounds["theta"] = theta;
    try {
      outcome = run_partition_check(n, lambda, mu, theta, d);
    } catch (const std::invalid_argument& e) {
      bounds.fail(e.what());
    }
  } else if (task == "replay-multicube") {
    MulticubeParams params;
    params.a = bound_u64("a", 1);
    params.b = bound_u64("b", 1);
    params.m = bound_u64("m", params.a);
    params.n = bound_u64("n", params.b);
    std::uint64_t window =
        overrides.bound ? *overrides.bound : bound_u64("window", 4);
    if (window == 0 || window > 12)
      bounds.fail("window must be between 1 and 12");
    params.window = window;
    std::uint64_t max_pick = bound_u64("max_pick", 4);
    resolved_bounds["a"] = params.a;
    resolved_bounds["b"] = params.b;
    resolved_bounds["m"] = params.m;
    resolved_bounds["n"] = params.n;
    resolved_bounds["window"] = params.window;
    resolved_bounds["max_pick"] = max_pick;
    outcome = run_replay_multicube(params, max_pick, bounds);
  } else {
    root.at("task").fail("unknown task \"" + task + "\"");
  }

  json parameters{{"seed", seed}, {"bounds", std::move(resolved_bounds)},
                  {"format", format}};
  if (root.has("instance")) parameters["instance"] = doc.at("instance");
  if (root.has("colouring")) parameters["colouring"] = doc.at("colouring");

  json envelope{{"name", name},
                {"task", task},
                {"tool_version", kToolVersion},
                {"parameters", std::move(parameters)},
                {"result", std::move(outcome.result)},
                {"status", outcome.ok ? "ok" : "check-failed"}};

  ScenarioOutcome out;
  out.exit_code = outcome.ok ? 0 : 2;
  out.report = format == "csv" ? render_csv_coverage(envelope)
                               : envelope.dump(2) + "\n";
  return out;
}

}  // namespace fsr
