// Copyright 2026 The needsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "needsim/config.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>

#include "json.hpp"

namespace needsim {

using Json = nlohmann::ordered_json;

ConfigSyntaxError::ConfigSyntaxError(int line, int column, const std::string& detail)
    : ConfigError("syntax error at line " + std::to_string(line) + ", column " +
                  std::to_string(column) + ": " + detail),
      line_(line),
      column_(column) {}

UnknownKeyError::UnknownKeyError(const std::string& path)
    : ConfigError("unknown key: " + path), path_(path) {}

std::string_view ToString(SegmentType t) {
  switch (t) {
    case SegmentType::kWork: return "work";
    case SegmentType::kFree: return "free";
    case SegmentType::kRest: return "rest";
  }
  return "?";
}

bool Schedule::HasWork(bool weekend_day) const {
  const auto& day = weekend_day ? weekend : weekday;
  return std::find(day.begin(), day.end(), SegmentType::kWork) != day.end();
}

namespace {

int MinOf(const std::vector<int>& v) { return v.empty() ? 0 : *std::min_element(v.begin(), v.end()); }
double MeanOf(const std::vector<int>& v) {
  return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

int HouseholdShape::MinSize() const {
  return adults + MinOf(children) + MinOf(students) + MinOf(retirees);
}

double HouseholdShape::MeanSize() const {
  return adults + MeanOf(children) + MeanOf(students) + MeanOf(retirees);
}

namespace {

// Walks one JSON object, remembering which keys were read so that leftovers
// can be reported as unknown.
class Reader {
 public:
  Reader(const Json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConstraintError(Where() + " must be an object");
  }

  const std::string& path() const { return path_; }

  const Json* Find(std::string_view key) {
    seen_.insert(std::string(key));
    auto it = j_.find(std::string(key));
    return it == j_.end() ? nullptr : &*it;
  }

  template <typename T>
  void Get(std::string_view key, T& out) {
    const Json* v = Find(key);
    if (v == nullptr) return;
    out = Convert<T>(*v, Child(key));
  }

  // Object-valued child.
  template <typename F>
  void Section(std::string_view key, F&& f) {
    const Json* v = Find(key);
    if (v == nullptr) return;
    Reader r(*v, Child(key));
    f(r);
    r.Finish();
  }

  void Finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!seen_.count(it.key())) throw UnknownKeyError(Child(it.key()));
    }
  }

  std::string Child(std::string_view key) const {
    return path_.empty() ? std::string(key) : path_ + "." + std::string(key);
  }

  template <typename T>
  static T Convert(const Json& v, const std::string& where) {
    if constexpr (std::is_same_v<T, bool>) {
      if (!v.is_boolean()) throw ConstraintError(where + " must be a boolean");
      return v.get<bool>();
    } else if constexpr (std::is_integral_v<T>) {
      if (!v.is_number_integer()) throw ConstraintError(where + " must be an integer");
      if constexpr (std::is_unsigned_v<T>) {
        if (v.is_number_unsigned()) return v.get<T>();
        if (v.get<std::int64_t>() < 0) throw ConstraintError(where + " must be non-negative");
        return static_cast<T>(v.get<std::int64_t>());
      } else {
        if (v.is_number_unsigned() &&
            v.get<std::uint64_t>() > static_cast<std::uint64_t>(std::numeric_limits<T>::max())) {
          throw ConstraintError(where + " is out of range");
        }
        const auto x = v.get<std::int64_t>();
        if (x < std::numeric_limits<T>::min() || x > std::numeric_limits<T>::max()) {
          throw ConstraintError(where + " is out of range");
        }
        return static_cast<T>(x);
      }
    } else if constexpr (std::is_floating_point_v<T>) {
      if (!v.is_number()) throw ConstraintError(where + " must be a number");
      return v.get<T>();
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!v.is_string()) throw ConstraintError(where + " must be a string");
      return v.get<std::string>();
    } else if constexpr (std::is_same_v<T, std::vector<int>>) {
      if (!v.is_array()) throw ConstraintError(where + " must be an array");
      std::vector<int> out;
      for (std::size_t i = 0; i < v.size(); ++i) {
        out.push_back(Convert<int>(v[i], where + "[" + std::to_string(i) + "]"));
      }
      return out;
    } else {
      static_assert(sizeof(T) == 0, "unsupported type");
    }
  }

 private:
  std::string Where() const { return path_.empty() ? std::string("config") : path_; }

  const Json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

// Enum-keyed arrays are written as objects keyed by the enum name.
template <typename E, std::size_t N, typename T, typename F>
void ReadKeyed(Reader& r, std::string_view key, std::array<T, N>& out,
               const std::array<E, N>& all, F&& read_one) {
  r.Section(key, [&](Reader& s) {
    for (E e : all) {
      const std::string name(ToString(e));
      if (const Json* v = s.Find(name)) read_one(*v, s.Child(name), out[Index(e)]);
    }
  });
}

template <typename E, std::size_t N, typename T>
void ReadKeyedScalar(Reader& r, std::string_view key, std::array<T, N>& out,
                     const std::array<E, N>& all) {
  ReadKeyed(r, key, out, all, [](const Json& v, const std::string& where, T& dst) {
    dst = Reader::Convert<T>(v, where);
  });
}

template <typename E, std::size_t N, typename T>
Json WriteKeyedScalar(const std::array<T, N>& in, const std::array<E, N>& all) {
  Json j = Json::object();
  for (E e : all) j[std::string(ToString(e))] = in[Index(e)];
  return j;
}

constexpr std::array<Need, kNumNeeds> kAllNeedsList{Need::kSafety, Need::kBelonging,
                                                    Need::kSelfEsteem, Need::kAutonomy,
                                                    Need::kSurvival};
constexpr std::array<Subneed, kNumSubneeds> kAllSubneedsList{
    Subneed::kFoodSafety, Subneed::kFinancialSurvival, Subneed::kRiskAvoidance,
    Subneed::kCompliance, Subneed::kFinancialSafety};
constexpr std::array<HouseholdKind, kNumHouseholdKinds> kAllHouseholdKindsList{
    HouseholdKind::kFamily, HouseholdKind::kStudentShared, HouseholdKind::kRetirementHome,
    HouseholdKind::kThreeGeneration, HouseholdKind::kCoParenting};
constexpr std::array<const char*, 4> kExitNames{"I1", "I2", "O1", "O2"};

std::vector<SegmentType> ReadSegments(const Json& v, const std::string& where) {
  if (!v.is_array()) throw ConstraintError(where + " must be an array");
  std::vector<SegmentType> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto s = Reader::Convert<std::string>(v[i], where + "[" + std::to_string(i) + "]");
    if (s == "work") out.push_back(SegmentType::kWork);
    else if (s == "free") out.push_back(SegmentType::kFree);
    else if (s == "rest") out.push_back(SegmentType::kRest);
    else throw ConstraintError(where + ": unknown segment type '" + s + "'");
  }
  return out;
}

Json WriteSegments(const std::vector<SegmentType>& v) {
  Json j = Json::array();
  for (SegmentType s : v) j.push_back(std::string(ToString(s)));
  return j;
}

void ReadNeeds(Reader& r, NeedsCalibration& cal) {
  ReadKeyed(r, "needs", cal.need, kAllNeedsList,
            [](const Json& v, const std::string& where, NeedParams& p) {
              Reader s(v, where);
              s.Get("threshold", p.threshold);
              s.Get("decay_per_tick", p.decay_per_tick);
              s.Get("importance", p.importance);
              s.Finish();
            });
  ReadKeyed(r, "subneeds", cal.subneed, kAllSubneedsList,
            [](const Json& v, const std::string& where, SubneedParams& p) {
              Reader s(v, where);
              s.Get("decay_per_tick", p.decay_per_tick);
              s.Finish();
            });
  r.Section("safety_weights", [&](Reader& s) {
    s.Get("risk_avoidance", cal.safety_weights.risk_avoidance);
    s.Get("compliance", cal.safety_weights.compliance);
    s.Get("financial_safety", cal.safety_weights.financial_safety);
    s.Get("include_financial_safety", cal.safety_weights.include_financial_safety);
  });
  r.Section("gains", [&](Reader& s) {
    GainTable& g = cal.gains;
    s.Get("company_multiplier", g.company_multiplier);
    s.Get("sick_survival_multiplier", g.sick_survival_multiplier);
    s.Get("risk_penalty_scale", g.risk_penalty_scale);
    s.Get("breaking_compliance_scale", g.breaking_compliance_scale);
    s.Get("conformity_scale", g.conformity_scale);
    ReadKeyed(s, "activities", g.base, kAllActivityKinds,
              [](const Json& v, const std::string& where, ActivityGains& a) {
                Reader t(v, where);
                for (Need n : kAllNeedsList) t.Get(ToString(n), a.need[Index(n)]);
                for (Subneed n : kAllSubneedsList) t.Get(ToString(n), a.sub[Index(n)]);
                t.Finish();
              });
  });
  r.Get("sick_survival_drain", cal.sick_survival_drain);
  r.Get("food_safety_days", cal.food_safety_days);
}

Json WriteNeeds(const NeedsCalibration& cal) {
  Json j = Json::object();
  Json needs = Json::object();
  for (Need n : kAllNeedsList) {
    const NeedParams& p = cal.need[Index(n)];
    needs[std::string(ToString(n))] = {{"threshold", p.threshold},
                                       {"decay_per_tick", p.decay_per_tick},
                                       {"importance", p.importance}};
  }
  j["needs"] = needs;
  Json subs = Json::object();
  for (Subneed n : kAllSubneedsList) {
    subs[std::string(ToString(n))] = {{"decay_per_tick", cal.subneed[Index(n)].decay_per_tick}};
  }
  j["subneeds"] = subs;
  j["safety_weights"] = {{"risk_avoidance", cal.safety_weights.risk_avoidance},
                         {"compliance", cal.safety_weights.compliance},
                         {"financial_safety", cal.safety_weights.financial_safety},
                         {"include_financial_safety", cal.safety_weights.include_financial_safety}};
  const GainTable& g = cal.gains;
  Json gains = {{"company_multiplier", g.company_multiplier},
                {"sick_survival_multiplier", g.sick_survival_multiplier},
                {"risk_penalty_scale", g.risk_penalty_scale},
                {"breaking_compliance_scale", g.breaking_compliance_scale},
                {"conformity_scale", g.conformity_scale}};
  Json acts = Json::object();
  for (ActivityKind k : kAllActivityKinds) {
    Json a = Json::object();
    for (Need n : kAllNeedsList) a[std::string(ToString(n))] = g[k].need[Index(n)];
    for (Subneed n : kAllSubneedsList) a[std::string(ToString(n))] = g[k].sub[Index(n)];
    acts[std::string(ToString(k))] = a;
  }
  gains["activities"] = acts;
  j["gains"] = gains;
  j["sick_survival_drain"] = cal.sick_survival_drain;
  j["food_safety_days"] = cal.food_safety_days;
  return j;
}

void ReadPopulation(Reader& r, PopulationParams& p) {
  r.Get("target", p.target);
  r.Get("min_population", p.min_population);
  r.Get("max_population", p.max_population);
  r.Section("households", [&](Reader& s) {
    for (HouseholdKind k : kAllHouseholdKindsList) {
      s.Section(ToString(k), [&](Reader& h) {
        h.Get("share", p.distribution[Index(k)]);
        HouseholdShape& shape = p.shapes[Index(k)];
        h.Get("adults", shape.adults);
        h.Get("children", shape.children);
        h.Get("students", shape.students);
        h.Get("retirees", shape.retirees);
      });
    }
  });
  r.Get("unemployment_fraction", p.unemployment_fraction);
  r.Get("telework_fraction", p.telework_fraction);
  r.Get("commuter_fraction", p.commuter_fraction);
  r.Get("cluster_mean_size", p.cluster_mean_size);
  ReadKeyedScalar(r, "employer_weights", p.employer_weights, kAllPlaceKinds);
  ReadKeyed(r, "places", p.places, kAllPlaceKinds,
            [](const Json& v, const std::string& where, PlaceKindParams& k) {
              Reader s(v, where);
              s.Get("count", k.count);
              s.Get("contagion_base", k.contagion_base);
              s.Get("capacity", k.capacity);
              s.Finish();
            });
  r.Get("universities", p.universities);
  r.Section("traits", [&](Reader& s) {
    s.Get("risk_avoidance_min", p.traits.risk_avoidance_min);
    s.Get("risk_avoidance_max", p.traits.risk_avoidance_max);
    s.Get("compliance_min", p.traits.compliance_min);
    s.Get("compliance_max", p.traits.compliance_max);
    s.Get("importance_jitter", p.traits.importance_jitter);
  });
}

Json WritePopulation(const PopulationParams& p) {
  Json j = {{"target", p.target},
            {"min_population", p.min_population},
            {"max_population", p.max_population}};
  Json hh = Json::object();
  for (HouseholdKind k : kAllHouseholdKindsList) {
    const HouseholdShape& s = p.shapes[Index(k)];
    hh[std::string(ToString(k))] = {{"share", p.distribution[Index(k)]},
                                    {"adults", s.adults},
                                    {"children", s.children},
                                    {"students", s.students},
                                    {"retirees", s.retirees}};
  }
  j["households"] = hh;
  j["unemployment_fraction"] = p.unemployment_fraction;
  j["telework_fraction"] = p.telework_fraction;
  j["commuter_fraction"] = p.commuter_fraction;
  j["cluster_mean_size"] = p.cluster_mean_size;
  j["employer_weights"] = WriteKeyedScalar(p.employer_weights, kAllPlaceKinds);
  Json places = Json::object();
  for (PlaceKind k : kAllPlaceKinds) {
    const PlaceKindParams& q = p.places[Index(k)];
    places[std::string(ToString(k))] = {
        {"count", q.count}, {"contagion_base", q.contagion_base}, {"capacity", q.capacity}};
  }
  j["places"] = places;
  j["universities"] = p.universities;
  j["traits"] = {{"risk_avoidance_min", p.traits.risk_avoidance_min},
                 {"risk_avoidance_max", p.traits.risk_avoidance_max},
                 {"compliance_min", p.traits.compliance_min},
                 {"compliance_max", p.traits.compliance_max},
                 {"importance_jitter", p.traits.importance_jitter}};
  return j;
}

void ReadEpidemic(Reader& r, EpidemicParams& p) {
  r.Get("incubation_days_min", p.incubation_days_min);
  r.Get("incubation_days_max", p.incubation_days_max);
  r.Get("p_visit_doctor", p.p_visit_doctor);
  r.Get("p_late_visit", p.p_late_visit);
  r.Section("exit", [&](Reader& s) {
    for (std::size_t i = 0; i < kExitNames.size(); ++i) {
      s.Section(kExitNames[i], [&](Reader& e) {
        e.Get("recover", p.exit[i].recover);
        e.Get("die", p.exit[i].die);
      });
    }
  });
  ReadKeyedScalar(r, "death_multiplier", p.death_multiplier, kAllAgeGroups);
  ReadKeyedScalar(r, "susceptibility", p.susceptibility, kAllAgeGroups);
  r.Get("p_waning", p.p_waning);
  r.Get("delta", p.delta);
  r.Get("asymptomatic_fraction", p.asymptomatic_fraction);
  r.Get("density_scale", p.density_scale);
  r.Get("initial_infected", p.initial_infected);
}

Json WriteEpidemic(const EpidemicParams& p) {
  Json exit = Json::object();
  for (std::size_t i = 0; i < kExitNames.size(); ++i) {
    exit[kExitNames[i]] = {{"recover", p.exit[i].recover}, {"die", p.exit[i].die}};
  }
  return {{"incubation_days_min", p.incubation_days_min},
          {"incubation_days_max", p.incubation_days_max},
          {"p_visit_doctor", p.p_visit_doctor},
          {"p_late_visit", p.p_late_visit},
          {"exit", exit},
          {"death_multiplier", WriteKeyedScalar(p.death_multiplier, kAllAgeGroups)},
          {"susceptibility", WriteKeyedScalar(p.susceptibility, kAllAgeGroups)},
          {"p_waning", p.p_waning},
          {"delta", p.delta},
          {"asymptomatic_fraction", p.asymptomatic_fraction},
          {"density_scale", p.density_scale},
          {"initial_infected", p.initial_infected}};
}

void ReadEconomy(Reader& r, EconomyParams& p) {
  ReadKeyedScalar(r, "initial_wealth", p.initial_wealth, kAllAgeGroups);
  ReadKeyedScalar(r, "place_initial_wealth", p.place_initial_wealth, kAllPlaceKinds);
  r.Get("government_initial_reserves", p.government_initial_reserves);
  r.Get("wage_per_day", p.wage_per_day);
  r.Get("tax_rate", p.tax_rate);
  r.Get("subsidy_per_day", p.subsidy_per_day);
  r.Get("public_service_cost", p.public_service_cost);
  r.Get("essential_price_per_day", p.essential_price_per_day);
  r.Get("nonessential_price", p.nonessential_price);
  r.Get("leisure_price", p.leisure_price);
  r.Get("fixed_costs_enabled", p.fixed_costs_enabled);
  r.Get("fixed_cost_per_day", p.fixed_cost_per_day);
  r.Get("allow_government_deficit", p.allow_government_deficit);
  r.Get("essential_consumption_per_day", p.essential_consumption_per_day);
  r.Get("initial_stock_days_min", p.initial_stock_days_min);
  r.Get("initial_stock_days_max", p.initial_stock_days_max);
  r.Get("financial_survival_buffer", p.financial_survival_buffer);
  r.Get("financial_safety_buffer", p.financial_safety_buffer);
}

Json WriteEconomy(const EconomyParams& p) {
  return {{"initial_wealth", WriteKeyedScalar(p.initial_wealth, kAllAgeGroups)},
          {"place_initial_wealth", WriteKeyedScalar(p.place_initial_wealth, kAllPlaceKinds)},
          {"government_initial_reserves", p.government_initial_reserves},
          {"wage_per_day", p.wage_per_day},
          {"tax_rate", p.tax_rate},
          {"subsidy_per_day", p.subsidy_per_day},
          {"public_service_cost", p.public_service_cost},
          {"essential_price_per_day", p.essential_price_per_day},
          {"nonessential_price", p.nonessential_price},
          {"leisure_price", p.leisure_price},
          {"fixed_costs_enabled", p.fixed_costs_enabled},
          {"fixed_cost_per_day", p.fixed_cost_per_day},
          {"allow_government_deficit", p.allow_government_deficit},
          {"essential_consumption_per_day", p.essential_consumption_per_day},
          {"initial_stock_days_min", p.initial_stock_days_min},
          {"initial_stock_days_max", p.initial_stock_days_max},
          {"financial_survival_buffer", p.financial_survival_buffer},
          {"financial_safety_buffer", p.financial_safety_buffer}};
}

Condition ReadCondition(const Json& v, const std::string& where) {
  const auto text = Reader::Convert<std::string>(v, where);
  try {
    return ParseCondition(text);
  } catch (const std::invalid_argument& e) {
    throw ConstraintError(where + ": " + e.what());
  }
}

PolicySpec ReadPolicy(const Json& v, const std::string& where) {
  Reader r(v, where);
  PolicySpec spec;
  const Json* kind = r.Find("kind");
  if (kind == nullptr) throw ConstraintError(where + ".kind is required");
  const auto name = Reader::Convert<std::string>(*kind, r.Child("kind"));
  const auto parsed = ParsePolicyKind(name);
  if (!parsed) throw ConstraintError(where + ".kind: unknown policy '" + name + "'");
  spec.kind = *parsed;
  if (const Json* t = r.Find("trigger")) spec.trigger = ReadCondition(*t, r.Child("trigger"));
  if (const Json* t = r.Find("release"); t != nullptr && !t->is_null()) {
    spec.release = ReadCondition(*t, r.Child("release"));
  }
  r.Get("contagion_multiplier", spec.contagion_multiplier);
  r.Section("testing", [&](Reader& s) {
    if (const Json* m = s.Find("mode")) {
      const auto mode = Reader::Convert<std::string>(*m, s.Child("mode"));
      if (mode == "symptomatic") spec.testing.mode = TestingMode::kSymptomatic;
      else if (mode == "random") spec.testing.mode = TestingMode::kRandom;
      else throw ConstraintError(s.Child("mode") + ": unknown testing mode '" + mode + "'");
    }
    s.Get("capacity_per_day", spec.testing.capacity_per_day);
    s.Get("sensitivity", spec.testing.sensitivity);
  });
  r.Finish();
  return spec;
}

Json WritePolicy(const PolicySpec& spec) {
  Json j = {{"kind", std::string(ToString(spec.kind))},
            {"trigger", FormatCondition(spec.trigger)}};
  j["release"] = spec.release ? Json(FormatCondition(*spec.release)) : Json(nullptr);
  j["contagion_multiplier"] = spec.contagion_multiplier;
  j["testing"] = {
      {"mode", spec.testing.mode == TestingMode::kSymptomatic ? "symptomatic" : "random"},
      {"capacity_per_day", spec.testing.capacity_per_day},
      {"sensitivity", spec.testing.sensitivity}};
  return j;
}

Json ParseJson(std::string_view text) {
  const bool blank = std::all_of(text.begin(), text.end(), [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r';
  });
  if (blank) return Json::object();
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    // e.byte is 1-based and points just past the offending character.
    const std::size_t upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    int line = 1;
    int column = 1;
    for (std::size_t i = 0; i < upto; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string detail = e.what();
    if (const auto pos = detail.find("parse error"); pos != std::string::npos) {
      detail = detail.substr(pos);
    }
    throw ConfigSyntaxError(line, column, detail);
  }
}

void Check(bool ok, const std::string& message) {
  if (!ok) throw ConstraintError(message);
}

bool IsFraction(double x) { return x >= 0.0 && x <= 1.0; }

}  // namespace

ScenarioConfig ParseConfig(std::string_view text) {
  const Json root = ParseJson(text);
  ScenarioConfig c;
  Reader r(root, "");
  r.Get("name", c.name);
  r.Get("ticks_total", c.ticks_total);
  r.Get("ticks_per_day", c.ticks_per_day);
  r.Get("base_seed", c.base_seed);
  r.Get("runs", c.runs);
  r.Get("log_transmissions", c.log_transmissions);
  r.Section("population", [&](Reader& s) { ReadPopulation(s, c.population); });
  r.Section("schedule", [&](Reader& s) {
    if (const Json* v = s.Find("weekday")) c.schedule.weekday = ReadSegments(*v, s.Child("weekday"));
    if (const Json* v = s.Find("weekend")) c.schedule.weekend = ReadSegments(*v, s.Child("weekend"));
  });
  r.Section("needs", [&](Reader& s) { ReadNeeds(s, c.needs); });
  r.Section("epidemic", [&](Reader& s) { ReadEpidemic(s, c.epidemic); });
  r.Section("economy", [&](Reader& s) { ReadEconomy(s, c.economy); });
  if (const Json* v = r.Find("policies")) {
    if (!v->is_array()) throw ConstraintError("policies must be an array");
    for (std::size_t i = 0; i < v->size(); ++i) {
      c.policies.push_back(ReadPolicy((*v)[i], "policies[" + std::to_string(i) + "]"));
    }
  }
  r.Finish();
  ValidateConfig(c);
  return c;
}

std::string SerializeConfig(const ScenarioConfig& c) {
  Json j = {{"name", c.name},
            {"ticks_total", c.ticks_total},
            {"ticks_per_day", c.ticks_per_day},
            {"base_seed", c.base_seed},
            {"runs", c.runs},
            {"log_transmissions", c.log_transmissions}};
  j["population"] = WritePopulation(c.population);
  j["schedule"] = {{"weekday", WriteSegments(c.schedule.weekday)},
                   {"weekend", WriteSegments(c.schedule.weekend)}};
  j["needs"] = WriteNeeds(c.needs);
  j["epidemic"] = WriteEpidemic(c.epidemic);
  j["economy"] = WriteEconomy(c.economy);
  Json policies = Json::array();
  for (const PolicySpec& p : c.policies) policies.push_back(WritePolicy(p));
  j["policies"] = policies;
  return j.dump(2) + "\n";
}

NeedsCalibration ParseCalibration(std::string_view text) {
  const Json root = ParseJson(text);
  NeedsCalibration cal = DefaultNeedsCalibration();
  Reader r(root, "");
  ReadNeeds(r, cal);
  r.Finish();
  try {
    ValidateCalibration(cal);
  } catch (const std::invalid_argument& e) {
    throw ConstraintError(e.what());
  }
  return cal;
}

std::string SerializeCalibration(const NeedsCalibration& cal) {
  return WriteNeeds(cal).dump(2) + "\n";
}

void ValidateConfig(const ScenarioConfig& c) {
  Check(c.ticks_total >= 0, "ticks_total must be >= 0");
  Check(c.ticks_per_day >= 1, "ticks_per_day must be >= 1");
  Check(c.runs >= 1, "runs must be >= 1");
  const auto tpd = static_cast<std::size_t>(c.ticks_per_day);
  Check(c.schedule.weekday.size() == tpd && c.schedule.weekend.size() == tpd,
        "schedule.weekday and schedule.weekend must have ticks_per_day entries");

  const PopulationParams& p = c.population;
  Check(p.min_population >= 1, "population.min_population must be >= 1");
  Check(p.min_population <= p.max_population,
        "population.min_population must not exceed max_population");
  Check(p.target >= p.min_population && p.target <= p.max_population,
        "population.target must lie within [min_population, max_population]");
  double share_sum = 0.0;
  for (HouseholdKind k : kAllHouseholdKindsList) {
    const std::string name(ToString(k));
    const double share = p.distribution[Index(k)];
    Check(std::isfinite(share) && share >= 0.0,
          "population.households." + name + ".share must be non-negative");
    share_sum += share;
    const HouseholdShape& s = p.shapes[Index(k)];
    Check(s.adults >= 0, "population.households." + name + ".adults must be >= 0");
    for (const auto* list : {&s.children, &s.students, &s.retirees}) {
      for (int n : *list) {
        Check(n >= 0, "population.households." + name + " member counts must be >= 0");
      }
    }
    if (share > 0.0) {
      Check(s.MinSize() >= 1, "population.households." + name + " must have at least one member");
    }
  }
  Check(std::abs(share_sum - 1.0) <= 1e-6, "population.households shares must sum to 1");
  for (HouseholdKind k : {HouseholdKind::kFamily, HouseholdKind::kThreeGeneration,
                          HouseholdKind::kCoParenting}) {
    if (p.distribution[Index(k)] > 0.0) {
      Check(p.shapes[Index(k)].adults >= 1,
            "population.households." + std::string(ToString(k)) + ".adults must be >= 1");
    }
  }
  if (p.distribution[Index(HouseholdKind::kCoParenting)] > 0.0) {
    Check(p.shapes[Index(HouseholdKind::kCoParenting)].adults >= 2,
          "population.households.co_parenting.adults must be >= 2");
  }
  Check(IsFraction(p.unemployment_fraction), "population.unemployment_fraction must be in [0, 1]");
  Check(IsFraction(p.telework_fraction), "population.telework_fraction must be in [0, 1]");
  Check(IsFraction(p.commuter_fraction), "population.commuter_fraction must be in [0, 1]");
  Check(p.cluster_mean_size >= 1.0, "population.cluster_mean_size must be >= 1");
  double weight_sum = 0.0;
  for (PlaceKind k : kAllPlaceKinds) {
    const double w = p.employer_weights[Index(k)];
    Check(std::isfinite(w) && w >= 0.0, "population.employer_weights must be non-negative");
    weight_sum += w;
    const PlaceKindParams& q = p.places[Index(k)];
    const std::string name(ToString(k));
    Check(q.count >= 0, "population.places." + name + ".count must be >= 0");
    Check(q.capacity >= 1, "population.places." + name + ".capacity must be >= 1");
    Check(IsFraction(q.contagion_base),
          "population.places." + name + ".contagion_base must be in [0, 1]");
  }
  Check(weight_sum > 0.0, "population.employer_weights must not all be zero");
  Check(p.employer_weights[Index(PlaceKind::kHome)] == 0.0 &&
            p.employer_weights[Index(PlaceKind::kStation)] == 0.0,
        "population.employer_weights: homes and stations cannot employ");
  Check(p.universities >= 0, "population.universities must be >= 0");
  const TraitRanges& t = p.traits;
  Check(IsFraction(t.risk_avoidance_min) && IsFraction(t.risk_avoidance_max) &&
            t.risk_avoidance_min <= t.risk_avoidance_max,
        "population.traits risk_avoidance range must be an ordered sub-range of [0, 1]");
  Check(IsFraction(t.compliance_min) && IsFraction(t.compliance_max) &&
            t.compliance_min <= t.compliance_max,
        "population.traits compliance range must be an ordered sub-range of [0, 1]");
  Check(t.importance_jitter >= 0.0 && t.importance_jitter < 1.0,
        "population.traits.importance_jitter must be in [0, 1)");

  try {
    ValidateCalibration(c.needs);
    ValidateEpidemicParams(c.epidemic);
    ValidateEconomyParams(c.economy);
  } catch (const std::invalid_argument& e) {
    throw ConstraintError(e.what());
  }
  Check(c.epidemic.initial_infected <= p.target,
        "epidemic.initial_infected must not exceed population.target");

  for (std::size_t i = 0; i < c.policies.size(); ++i) {
    const PolicySpec& s = c.policies[i];
    const std::string where = "policies[" + std::to_string(i) + "]";
    Check(IsFraction(s.contagion_multiplier), where + ".contagion_multiplier must be in [0, 1]");
    Check(s.testing.capacity_per_day >= 0, where + ".testing.capacity_per_day must be >= 0");
    Check(IsFraction(s.testing.sensitivity), where + ".testing.sensitivity must be in [0, 1]");
  }
}

std::vector<std::string> BuiltinScenarioNames() {
  return {"baseline", "close-schools", "work-at-home", "lockdown-no-subsidy",
          "lockdown-subsidy"};
}

ScenarioConfig BuiltinScenario(std::string_view name) {
  ScenarioConfig c;
  c.name = std::string(name);
  auto add = [&](PolicyKind kind, const char* trigger) {
    PolicySpec s;
    s.kind = kind;
    s.trigger = ParseCondition(trigger);
    c.policies.push_back(s);
  };
  if (name == "baseline") {
  } else if (name == "close-schools") {
    add(PolicyKind::kCloseSchools, "detected >= 1");
  } else if (name == "work-at-home") {
    add(PolicyKind::kCloseSchools, "detected >= 1");
    add(PolicyKind::kCloseWorkplacesTelework, "detected >= 1");
  } else if (name == "lockdown-no-subsidy") {
    add(PolicyKind::kLockdown, "tick >= 0");
    add(PolicyKind::kCloseNonessentialShops, "tick >= 0");
  } else if (name == "lockdown-subsidy") {
    add(PolicyKind::kLockdown, "tick >= 0");
    add(PolicyKind::kCloseNonessentialShops, "tick >= 0");
    add(PolicyKind::kWageTakeover, "tick >= 0");
  } else {
    throw ConfigError("unknown scenario: " + std::string(name));
  }
  return c;
}

}  // namespace needsim
