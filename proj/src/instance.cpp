#include "cyclicity/instance.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace cyclicity {

using nlohmann::json;

ValidationError::ValidationError(std::vector<Diagnostic> diagnostics)
    : InputError([&] {
        std::string msg = "instance failed validation";
        for (const auto& d : diagnostics) msg += "\n  [" + d.axiom + "] " + d.message;
        return msg;
      }()),
      diagnostics_(std::move(diagnostics)) {}

namespace {

Integer parse_integer(const json& j, const std::string& where) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    const std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
    if (s.size() == start || s.find_first_not_of("0123456789", start) != std::string::npos)
      throw SchemaError(where + ": not a decimal integer: \"" + s + "\"");
    return Integer(s);
  }
  if (j.is_number_unsigned()) return Integer(std::to_string(j.get<std::uint64_t>()));
  if (j.is_number_integer()) return Integer(std::to_string(j.get<std::int64_t>()));
  throw SchemaError(where + ": expected an integer or a decimal string");
}

IntVector parse_vector(const json& j, std::size_t len, const std::string& where) {
  if (!j.is_array()) throw SchemaError(where + ": expected an array");
  if (j.size() != len)
    throw SchemaError(where + ": expected " + std::to_string(len) + " entries, got " + std::to_string(j.size()));
  IntVector v;
  v.reserve(len);
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(parse_integer(j[i], where + "[" + std::to_string(i) + "]"));
  return v;
}

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw SchemaError(where + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(where + ": missing \"" + key + "\"");
  return *it;
}

std::size_t parse_count(const json& j, const std::string& where) {
  Integer n = parse_integer(j, where);
  if (sgn(n) < 0 || !n.fits_ulong_p()) throw SchemaError(where + ": bad generator count");
  return n.get_ui();
}

std::vector<IntVector> parse_relations(const json& j, std::size_t n, const std::string& where) {
  if (!j.is_array()) throw SchemaError(where + ": expected an array of rows");
  std::vector<IntVector> rows;
  for (std::size_t i = 0; i < j.size(); ++i) rows.push_back(parse_vector(j[i], n, where + "[" + std::to_string(i) + "]"));
  return rows;
}

json vector_json(const IntVector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.get_str());
  return a;
}

json table_json(const Table& t) {
  json a = json::array();
  for (const auto& row : t) {
    json r = json::array();
    for (const auto& v : row) r.push_back(vector_json(v));
    a.push_back(std::move(r));
  }
  return a;
}

json rows_json(const std::vector<IntVector>& rows) {
  json a = json::array();
  for (const auto& v : rows) a.push_back(vector_json(v));
  return a;
}

class Sink {
 public:
  void report(const std::string& axiom, const std::string& message) {
    if (++counts_[axiom] <= 16) out_.push_back({axiom, message});
  }
  std::vector<Diagnostic> take() {
    for (const auto& [axiom, n] : counts_)
      if (n > 16) out_.push_back({axiom, std::to_string(n - 16) + " further " + axiom + " violations omitted"});
    return std::move(out_);
  }

 private:
  std::vector<Diagnostic> out_;
  std::map<std::string, std::size_t> counts_;
};

// sum_l x_l * vs[l]
IntVector combine(std::span<const Integer> x, const std::vector<const IntVector*>& vs, std::size_t width) {
  IntVector acc(width);
  for (std::size_t l = 0; l < x.size(); ++l) {
    if (sgn(x[l]) == 0) continue;
    const IntVector& v = *vs[l];
    for (std::size_t c = 0; c < width; ++c)
      if (sgn(v[c]) != 0) addmul(acc[c], x[l], v[c]);
  }
  return acc;
}

std::vector<const IntVector*> column(const Table& t, std::size_t b) {
  std::vector<const IntVector*> out;
  for (const auto& row : t) out.push_back(&row[b]);
  return out;
}

std::vector<const IntVector*> row_of(const Table& t, std::size_t a) {
  std::vector<const IntVector*> out;
  for (const auto& v : t[a]) out.push_back(&v);
  return out;
}

std::string fmt(const IntVector& v) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  os << ']';
  return os.str();
}

// Expands an upper-triangular "mul" to the full table. Returns whether it did.
bool expand_mul(InstanceData::Ring& ring) {
  const std::size_t k = ring.num_gens;
  if (k < 2 || ring.mul.size() != k || ring.mul[1].size() != k - 1) return false;
  Table full(k, std::vector<IntVector>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) full[i][j] = full[j][i] = ring.mul[i][j - i];
  ring.mul = std::move(full);
  return true;
}

void check_shapes(const InstanceData& d) {
  const std::size_t k = d.ring.num_gens, l = d.module.num_gens;
  auto check_len = [](const IntVector& v, std::size_t n, const std::string& where) {
    if (v.size() != n)
      throw SchemaError(where + ": expected " + std::to_string(n) + " entries, got " + std::to_string(v.size()));
  };
  for (const auto& r : d.ring.relations) check_len(r, k, "ring.relations");
  for (const auto& r : d.module.relations) check_len(r, l, "module.relations");
  if (d.ring.mul.size() != k) throw SchemaError("ring.mul: expected " + std::to_string(k) + " rows");
  for (const auto& row : d.ring.mul) {
    if (row.size() != k) throw SchemaError("ring.mul: rows must have " + std::to_string(k) + " entries");
    for (const auto& v : row) check_len(v, k, "ring.mul");
  }
  if (d.ring.one) check_len(*d.ring.one, k, "ring.one");
  if (d.module.action.size() != k) throw SchemaError("module.action: expected " + std::to_string(k) + " rows");
  for (const auto& row : d.module.action) {
    if (row.size() != l) throw SchemaError("module.action: rows must have " + std::to_string(l) + " entries");
    for (const auto& v : row) check_len(v, l, "module.action");
  }
}

Presentation presentation(std::size_t n, const std::vector<IntVector>& relations) {
  return {n, IntMatrix::from_rows(relations, n)};
}

}  // namespace

InstanceData parse_instance(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("not valid JSON: ") + e.what());
  }
  InstanceData d;
  const json& ring = field(doc, "ring", "document");
  const json& module = field(doc, "module", "document");

  d.ring.num_gens = parse_count(field(ring, "num_gens", "ring"), "ring.num_gens");
  const std::size_t k = d.ring.num_gens;
  d.ring.relations = parse_relations(field(ring, "relations", "ring"), k, "ring.relations");
  const json& mul = field(ring, "mul", "ring");
  if (!mul.is_array() || mul.size() != k) throw SchemaError("ring.mul: expected " + std::to_string(k) + " rows");
  for (std::size_t i = 0; i < k; ++i) {
    const std::string where = "ring.mul[" + std::to_string(i) + "]";
    if (!mul[i].is_array()) throw SchemaError(where + ": expected an array");
    std::vector<IntVector> row;
    for (std::size_t j = 0; j < mul[i].size(); ++j)
      row.push_back(parse_vector(mul[i][j], k, where + "[" + std::to_string(j) + "]"));
    d.ring.mul.push_back(std::move(row));
  }
  if (auto it = ring.find("one"); it != ring.end() && !it->is_null()) d.ring.one = parse_vector(*it, k, "ring.one");

  d.module.num_gens = parse_count(field(module, "num_gens", "module"), "module.num_gens");
  const std::size_t l = d.module.num_gens;
  d.module.relations = parse_relations(field(module, "relations", "module"), l, "module.relations");
  const json& action = field(module, "action", "module");
  if (!action.is_array() || action.size() != k)
    throw SchemaError("module.action: expected " + std::to_string(k) + " rows, one per ring generator");
  for (std::size_t i = 0; i < k; ++i) {
    const std::string where = "module.action[" + std::to_string(i) + "]";
    if (!action[i].is_array() || action[i].size() != l)
      throw SchemaError(where + ": expected " + std::to_string(l) + " entries");
    std::vector<IntVector> row;
    for (std::size_t j = 0; j < l; ++j) row.push_back(parse_vector(action[i][j], l, where + "[" + std::to_string(j) + "]"));
    d.module.action.push_back(std::move(row));
  }

  // Only full square tables or upper triangles are accepted.
  const bool square = std::all_of(d.ring.mul.begin(), d.ring.mul.end(), [&](const auto& r) { return r.size() == k; });
  bool triangle = true;
  for (std::size_t i = 0; i < k; ++i) triangle = triangle && d.ring.mul[i].size() == k - i;
  if (!square && !triangle) throw SchemaError("ring.mul: expected a full k x k table or its upper triangle");
  return d;
}

std::string emit_instance(const InstanceData& d) {
  json ring = {{"num_gens", d.ring.num_gens}, {"relations", rows_json(d.ring.relations)}, {"mul", table_json(d.ring.mul)}};
  if (d.ring.one) ring["one"] = vector_json(*d.ring.one);
  json module = {{"num_gens", d.module.num_gens},
                 {"relations", rows_json(d.module.relations)},
                 {"action", table_json(d.module.action)}};
  json doc = {{"ring", std::move(ring)}, {"module", std::move(module)}};
  return doc.dump(1) + "\n";
}

InstanceData read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_instance(ss.str());
}

void write_instance_file(const std::string& path, const InstanceData& data) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << emit_instance(data);
}

std::vector<Diagnostic> user_table_diagnostics(const InstanceData& input) {
  InstanceData d = input;
  expand_mul(d.ring);
  check_shapes(d);
  const CanonicalGroup rg = canonicalize(presentation(d.ring.num_gens, d.ring.relations));
  const CanonicalGroup mg = canonicalize(presentation(d.module.num_gens, d.module.relations));
  const std::size_t k = d.ring.num_gens, l = d.module.num_gens;
  auto zero_in_r = [&](const IntVector& v) { return rg.is_zero(rg.from_user(v)); };
  auto zero_in_m = [&](const IntVector& v) { return mg.is_zero(mg.from_user(v)); };
  Sink sink;

  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a + 1; b < k; ++b) {
      IntVector diff = d.ring.mul[a][b];
      for (std::size_t c = 0; c < k; ++c) diff[c] -= d.ring.mul[b][a][c];
      if (!zero_in_r(diff))
        sink.report("commutativity", "mul[" + std::to_string(a) + "][" + std::to_string(b) + "] != mul[" +
                                         std::to_string(b) + "][" + std::to_string(a) + "]");
    }

  for (std::size_t q = 0; q < d.ring.relations.size(); ++q) {
    const IntVector& rho = d.ring.relations[q];
    for (std::size_t b = 0; b < k; ++b) {
      if (!zero_in_r(combine(rho, column(d.ring.mul, b), k)) || !zero_in_r(combine(rho, row_of(d.ring.mul, b), k)))
        sink.report("well-definedness", "ring relation " + fmt(rho) + " times ring generator " + std::to_string(b) +
                                            " is not zero");
    }
    for (std::size_t b = 0; b < l; ++b)
      if (!zero_in_m(combine(rho, column(d.module.action, b), l)))
        sink.report("well-definedness", "ring relation " + fmt(rho) + " does not kill module generator " +
                                            std::to_string(b));
  }
  for (const auto& sigma : d.module.relations)
    for (std::size_t a = 0; a < k; ++a)
      if (!zero_in_m(combine(sigma, row_of(d.module.action, a), l)))
        sink.report("well-definedness", "ring generator " + std::to_string(a) + " does not kill module relation " +
                                            fmt(sigma));
  return sink.take();
}

Instance build_instance(const InstanceData& input, bool validate) {
  Instance out;
  InstanceData d = input;
  if (expand_mul(d.ring)) out.warnings.push_back("ring.mul given as an upper triangle; symmetrized");
  check_shapes(d);

  std::vector<Diagnostic> diags;
  if (validate) diags = user_table_diagnostics(d);

  auto rg = std::make_shared<const CanonicalGroup>(canonicalize(presentation(d.ring.num_gens, d.ring.relations)));
  auto mg = std::make_shared<const CanonicalGroup>(canonicalize(presentation(d.module.num_gens, d.module.relations)));
  const std::size_t k = d.ring.num_gens, l = d.module.num_gens;
  const IntMatrix& fr = rg->from_canonical();
  const IntMatrix& fm = mg->from_canonical();

  // w[i][b] = sum_a fr(i, a) * mul[a][b]: canonical generator i times user generator b.
  std::vector<std::vector<IntVector>> w(rg->rank());
  for (std::size_t i = 0; i < rg->rank(); ++i)
    for (std::size_t b = 0; b < k; ++b) w[i].push_back(combine(fr.row(i), column(d.ring.mul, b), k));
  ProductTable products(rg->rank());
  for (std::size_t i = 0; i < rg->rank(); ++i) {
    std::vector<const IntVector*> wi;
    for (const auto& v : w[i]) wi.push_back(&v);
    for (std::size_t j = 0; j < rg->rank(); ++j) products[i].push_back(rg->from_user(combine(fr.row(j), wi, k)));
  }

  ActionTable action(rg->rank());
  for (std::size_t i = 0; i < rg->rank(); ++i) {
    std::vector<IntVector> ri;  // canonical ring generator i on each user module generator
    for (std::size_t b = 0; b < l; ++b) ri.push_back(combine(fr.row(i), column(d.module.action, b), l));
    std::vector<const IntVector*> rp;
    for (const auto& v : ri) rp.push_back(&v);
    for (std::size_t j = 0; j < mg->rank(); ++j) action[i].push_back(mg->from_user(combine(fm.row(j), rp, l)));
  }

  Element one;
  if (d.ring.one) {
    one = rg->from_user(*d.ring.one);
  } else {
    try {
      one = find_identity(rg, products);
    } catch (const InputError& e) {
      diags.push_back({"identity", e.what()});
      throw ValidationError(std::move(diags));
    }
  }

  auto ring = std::make_shared<const FiniteRing>(rg, std::move(products), std::move(one));
  auto module = std::make_shared<const FiniteModule>(mg, ring->rank(), std::move(action));
  if (validate) {
    for (auto& x : ring_validate(*ring)) diags.push_back(std::move(x));
    for (auto& x : module_validate(*ring, *module)) diags.push_back(std::move(x));
    if (!diags.empty()) throw ValidationError(std::move(diags));
  }
  out.ring = std::move(ring);
  out.module = std::move(module);
  return out;
}

}  // namespace cyclicity
