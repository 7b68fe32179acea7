#include "braidcat/jsonio.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

namespace braidcat {

namespace {

Json complex_fields(Cplx z) {
  return Json{{"re", z.real()}, {"im", z.imag()}};
}

}  // namespace

std::string fmt12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x == 0.0 ? 0.0 : x);
  return buf;
}

std::string fmt_complex(Cplx z) {
  return fmt12(z.real()) + " " + fmt12(z.imag());
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(complex_fields(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string category_to_json(const CategoryData& cat) {
  Json j;
  Json labels = Json::array();
  for (const Label& l : cat.labels)
    labels.push_back(Json{{"id", l.id}, {"name", l.name}, {"dual", l.dual}});
  j["labels"] = std::move(labels);
  j["unit"] = cat.unit;

  Json fusion = Json::array();
  const int L = cat.n_labels();
  for (int a = 0; a < L; ++a)
    for (int b = 0; b < L; ++b)
      for (int c = 0; c < L; ++c)
        if (cat.rules.n(a, b, c) > 0)
          fusion.push_back(Json::array({a, b, c, cat.rules.n(a, b, c)}));
  j["fusion"] = std::move(fusion);

  Json fsym = Json::array();
  for (const auto& [key, value] : cat.f.entries) {
    Json e;
    e["a"] = static_cast<int>((key >> 40) & 0xff);
    e["b"] = static_cast<int>((key >> 32) & 0xff);
    e["c"] = static_cast<int>((key >> 24) & 0xff);
    e["d"] = static_cast<int>((key >> 16) & 0xff);
    e["e"] = static_cast<int>((key >> 8) & 0xff);
    e["f"] = static_cast<int>(key & 0xff);
    e["re"] = value.real();
    e["im"] = value.imag();
    fsym.push_back(std::move(e));
  }
  j["F"] = std::move(fsym);

  Json rsym = Json::array();
  for (const auto& [key, value] : cat.r.entries) {
    Json e;
    e["a"] = static_cast<int>((key >> 16) & 0xff);
    e["b"] = static_cast<int>((key >> 8) & 0xff);
    e["c"] = static_cast<int>(key & 0xff);
    e["re"] = value.real();
    e["im"] = value.imag();
    rsym.push_back(std::move(e));
  }
  j["R"] = std::move(rsym);

  Json twists = Json::array();
  for (int a = 0; a < L; ++a) {
    Json e;
    e["a"] = a;
    e["re"] = cat.twists[a].real();
    e["im"] = cat.twists[a].imag();
    twists.push_back(std::move(e));
  }
  j["twists"] = std::move(twists);

  return j.dump(2) + "\n";
}

CategoryData category_from_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string("malformed JSON: ") + e.what());
  }

  CategoryData cat;
  cat.name = "file";
  const auto& labels = j.at("labels");
  if (labels.size() > 16) throw std::runtime_error("more than 16 labels");
  cat.labels.resize(labels.size());
  for (const auto& l : labels) {
    int id = l.at("id").get<int>();
    if (id < 0 || id >= static_cast<int>(labels.size()))
      throw std::runtime_error("label id out of range");
    cat.labels[id] =
        Label{id, l.at("name").get<std::string>(), l.at("dual").get<int>(),
              false};
  }
  cat.unit = j.at("unit").get<int>();
  if (cat.unit < 0 || cat.unit >= static_cast<int>(cat.labels.size()))
    throw std::runtime_error("unit id out of range");
  cat.labels[cat.unit].is_unit = true;

  const int L = static_cast<int>(cat.labels.size());
  cat.rules.n_labels = L;
  cat.rules.mult.assign(static_cast<std::size_t>(L) * L * L, 0);
  for (const auto& q : j.at("fusion")) {
    int a = q.at(0).get<int>(), b = q.at(1).get<int>(), c = q.at(2).get<int>();
    int n = q.at(3).get<int>();
    if (a < 0 || a >= L || b < 0 || b >= L || c < 0 || c >= L)
      throw std::runtime_error("fusion label out of range");
    if (n < 0 || n > 1)
      throw std::runtime_error("fusion multiplicity not in {0,1}");
    cat.rules.set(a, b, c, n);
  }

  for (const auto& e : j.at("F")) {
    int a = e.at("a").get<int>(), b = e.at("b").get<int>(),
        c = e.at("c").get<int>(), d = e.at("d").get<int>(),
        ee = e.at("e").get<int>(), f = e.at("f").get<int>();
    for (int v : {a, b, c, d, ee, f})
      if (v < 0 || v >= L) throw std::runtime_error("F label out of range");
    cat.f.set(a, b, c, d, ee, f,
              Cplx(e.at("re").get<double>(), e.at("im").get<double>()));
  }
  for (const auto& e : j.at("R")) {
    int a = e.at("a").get<int>(), b = e.at("b").get<int>(),
        c = e.at("c").get<int>();
    for (int v : {a, b, c})
      if (v < 0 || v >= L) throw std::runtime_error("R label out of range");
    cat.r.set(a, b, c,
              Cplx(e.at("re").get<double>(), e.at("im").get<double>()));
  }
  cat.twists.assign(L, Cplx(1.0, 0.0));
  for (const auto& e : j.at("twists")) {
    int a = e.at("a").get<int>();
    if (a < 0 || a >= L) throw std::runtime_error("twist label out of range");
    cat.twists[a] = Cplx(e.at("re").get<double>(), e.at("im").get<double>());
  }

  CheckReport structure = validate_structure(cat);
  if (!structure.pass)
    throw std::runtime_error("invalid category data: " + structure.detail);
  return cat;
}

std::string model_to_json(const EmpiricalModel& model) {
  const MeasurementScenario& s = model.scenario;
  Json j;
  j["measurements"] = s.measurements;
  Json outcomes;
  for (int i = 0; i < s.n_measurements(); ++i)
    outcomes[s.measurements[i]] = s.outcomes[i];
  j["outcomes"] = std::move(outcomes);

  Json contexts = Json::array();
  for (const auto& ctx : s.contexts) {
    Json names = Json::array();
    for (int i : ctx) names.push_back(s.measurements[i]);
    contexts.push_back(std::move(names));
  }
  j["contexts"] = std::move(contexts);

  Json tables;
  for (std::size_t c = 0; c < s.contexts.size(); ++c) {
    Json table;
    const auto& ctx = s.contexts[c];
    for (long long idx = 0;
         idx < static_cast<long long>(model.tables[c].size()); ++idx) {
      long long rest = idx;
      std::vector<int> tuple(ctx.size());
      for (int t = static_cast<int>(ctx.size()) - 1; t >= 0; --t) {
        long long radix = static_cast<long long>(s.outcomes[ctx[t]].size());
        tuple[t] = static_cast<int>(rest % radix);
        rest /= radix;
      }
      std::string key;
      for (std::size_t t = 0; t < ctx.size(); ++t) {
        if (t) key += ",";
        key += s.outcomes[ctx[t]][tuple[t]];
      }
      table[key] = model.tables[c][idx];
    }
    tables[std::to_string(c)] = std::move(table);
  }
  j["tables"] = std::move(tables);
  return j.dump(2) + "\n";
}

EmpiricalModel model_from_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string("malformed JSON: ") + e.what());
  }

  MeasurementScenario s;
  for (const auto& m : j.at("measurements"))
    s.measurements.push_back(m.get<std::string>());
  const int n = s.n_measurements();
  s.outcomes.resize(n);
  for (int i = 0; i < n; ++i) {
    const auto& o = j.at("outcomes").at(s.measurements[i]);
    for (const auto& v : o) s.outcomes[i].push_back(v.get<std::string>());
    if (s.outcomes[i].empty())
      throw std::runtime_error("empty outcome set for " + s.measurements[i]);
  }

  auto index_of_measurement = [&](const std::string& name) {
    for (int i = 0; i < n; ++i)
      if (s.measurements[i] == name) return i;
    throw std::runtime_error("unknown measurement " + name);
  };

  // Contexts may list measurements in any order in the file; tables are keyed
  // in the file's order, so keep the permutation to the sorted internal form.
  std::vector<std::vector<int>> file_order;
  for (const auto& ctx : j.at("contexts")) {
    std::vector<int> ids;
    for (const auto& name : ctx)
      ids.push_back(index_of_measurement(name.get<std::string>()));
    file_order.push_back(ids);
    std::vector<int> sorted = ids;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw std::runtime_error("repeated measurement in a context");
    s.contexts.push_back(std::move(sorted));
  }

  CheckReport structure = validate_scenario(s);
  if (!structure.pass)
    throw std::runtime_error("invalid scenario: " + structure.detail);

  EmpiricalModel model;
  model.scenario = s;
  model.tables.resize(s.contexts.size());
  for (std::size_t c = 0; c < s.contexts.size(); ++c) {
    model.tables[c].assign(s.context_size(static_cast<int>(c)), 0.0);
    const auto& table = j.at("tables").at(std::to_string(c));
    const std::vector<int>& order = file_order[c];
    for (auto it = table.begin(); it != table.end(); ++it) {
      // split the comma-joined outcome tuple, given in file context order
      std::vector<std::string> parts;
      std::string cur;
      for (char ch : it.key()) {
        if (ch == ',') {
          parts.push_back(cur);
          cur.clear();
        } else {
          cur += ch;
        }
      }
      parts.push_back(cur);
      if (parts.size() != order.size())
        throw std::runtime_error("outcome tuple arity mismatch in context " +
                                 std::to_string(c));
      std::vector<int> by_sorted(order.size());
      for (std::size_t t = 0; t < order.size(); ++t) {
        const int meas = order[t];
        const auto& lst = s.outcomes[meas];
        auto jt = std::find(lst.begin(), lst.end(), parts[t]);
        if (jt == lst.end())
          throw std::runtime_error("unknown outcome '" + parts[t] + "' for " +
                                   s.measurements[meas]);
        const auto& ctx = s.contexts[c];
        const int pos = static_cast<int>(
            std::lower_bound(ctx.begin(), ctx.end(), meas) - ctx.begin());
        by_sorted[pos] = static_cast<int>(jt - lst.begin());
      }
      const long long idx = s.tuple_index(static_cast<int>(c), by_sorted);
      model.tables[c][idx] = it.value().get<double>();
    }
  }
  return model;
}

}  // namespace braidcat
