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

#include "needsim/economy.h"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>
#include <string>

#include "needsim/world.h"

namespace needsim {
namespace {

constexpr std::array<std::string_view, kNumReasons> kReasonNames = {
    "wage",   "tax",        "subsidy",       "purchase_essential", "purchase_nonessential",
    "fixed_cost", "public_service"};

Money& WealthOf(World& world, Party p) {
  switch (p.kind) {
    case Party::Kind::kAgent:
      return world.agents.at(static_cast<std::size_t>(p.id)).wealth;
    case Party::Kind::kPlace:
      return world.places.at(static_cast<std::size_t>(p.id)).wealth;
    case Party::Kind::kGovernment:
      return world.government.reserves;
  }
  throw std::logic_error("bad party");
}

Money& WealthOf(WealthSnapshot& s, Party p) {
  switch (p.kind) {
    case Party::Kind::kAgent:
      return s.agents.at(static_cast<std::size_t>(p.id));
    case Party::Kind::kPlace:
      return s.places.at(static_cast<std::size_t>(p.id));
    case Party::Kind::kGovernment:
      return s.government;
  }
  throw std::logic_error("bad party");
}

bool IsPurchase(Reason r) {
  return r == Reason::kPurchaseEssential || r == Reason::kPurchaseNonessential;
}

// Government outlays respect the deficit rule; returns what can be paid.
Money GovernmentCanPay(const World& world, Money amount) {
  if (world.config.economy.allow_government_deficit) return amount;
  return std::clamp<Money>(world.government.reserves, 0, amount);
}

void PayWage(World& world, Party payer, AgentId employee, Money wage, SettlementReport& report) {
  if (wage <= 0) return;
  world.ledger.Transfer(world, payer, Party::OfAgent(employee), wage, Reason::kWage);
  report.wages_paid += wage;
  if (payer.kind == Party::Kind::kGovernment) report.wages_by_government += wage;
  const auto tax = static_cast<Money>(std::llround(static_cast<double>(wage) *
                                                   world.government.tax_rate));
  if (tax > 0) {
    world.ledger.Transfer(world, Party::OfAgent(employee), Party::OfGovernment(), tax,
                          Reason::kTax);
    report.tax_collected += tax;
  }
}

}  // namespace

std::string_view ToString(Reason r) { return kReasonNames[Index(r)]; }

void ValidateEconomyParams(const EconomyParams& p) {
  auto fail = [](const std::string& what) {
    throw std::invalid_argument("economy: " + what);
  };
  for (Money m : p.initial_wealth) {
    if (m < 0) fail("initial wealth must be >= 0");
  }
  for (Money m : p.place_initial_wealth) {
    if (m < 0) fail("place initial wealth must be >= 0");
  }
  if (p.wage_per_day < 0) fail("wage_per_day must be >= 0");
  if (!(p.tax_rate >= 0.0 && p.tax_rate <= 1.0)) fail("tax_rate must be in [0,1]");
  if (p.subsidy_per_day < 0) fail("subsidy_per_day must be >= 0");
  if (p.public_service_cost < 0) fail("public_service_cost must be >= 0");
  if (p.essential_price_per_day <= 0) fail("essential_price_per_day must be > 0");
  if (p.nonessential_price < 0 || p.leisure_price < 0) fail("prices must be >= 0");
  if (p.fixed_cost_per_day < 0) fail("fixed_cost_per_day must be >= 0");
  if (!(p.essential_consumption_per_day >= 0.0)) fail("essential consumption must be >= 0");
  if (!(p.initial_stock_days_min >= 0.0 && p.initial_stock_days_max >= p.initial_stock_days_min)) {
    fail("initial stock days must satisfy 0 <= min <= max");
  }
  if (p.financial_survival_buffer <= 0 || p.financial_safety_buffer <= 0) {
    fail("financial buffers must be > 0");
  }
}

void Ledger::Transfer(World& world, Party payer, Party payee, Money amount, Reason reason) {
  if (amount <= 0) throw std::invalid_argument("ledger amounts must be positive");
  WealthOf(world, payer) -= amount;
  WealthOf(world, payee) += amount;
  entries_.push_back({world.clock.tick(), payer, payee, amount, reason});
  if (IsPurchase(reason)) {
    const auto day = static_cast<std::size_t>(world.clock.day_index());
    if (world.purchases_by_day.size() <= day) world.purchases_by_day.resize(day + 1, 0);
    world.purchases_by_day[day] += amount;
  }
}

WealthSnapshot TakeWealthSnapshot(const World& world) {
  WealthSnapshot s;
  s.agents.reserve(world.agents.size());
  for (const auto& a : world.agents) s.agents.push_back(a.wealth);
  s.places.reserve(world.places.size());
  for (const auto& p : world.places) s.places.push_back(p.wealth);
  s.government = world.government.reserves;
  return s;
}

WealthSnapshot ReplayLedger(const WealthSnapshot& initial, const Ledger& ledger) {
  WealthSnapshot s = initial;
  for (const auto& e : ledger.entries()) {
    WealthOf(s, e.payer) -= e.amount;
    WealthOf(s, e.payee) += e.amount;
  }
  return s;
}

Money TotalMoney(const World& world) {
  Money total = world.government.reserves;
  for (const auto& a : world.agents) total += a.wealth;
  for (const auto& p : world.places) total += p.wealth;
  return total;
}

double MoneyVelocity(const Ledger& ledger, std::int64_t first_day, int window_days,
                     int ticks_per_day, Money total_money) {
  if (window_days < 1) throw std::invalid_argument("window_days must be >= 1");
  if (total_money <= 0) return 0.0;
  const Tick begin = first_day * ticks_per_day;
  const Tick end = (first_day + window_days) * ticks_per_day;
  Money purchases = 0;
  for (const auto& e : ledger.entries()) {
    if (e.tick >= begin && e.tick < end && IsPurchase(e.reason)) purchases += e.amount;
  }
  return static_cast<double>(purchases) /
         (static_cast<double>(total_money) * static_cast<double>(window_days));
}

Purchase Transact(World& world, AgentId agent_id, PlaceId shop_id, Money amount) {
  Purchase result;
  Agent& agent = world.agents.at(static_cast<std::size_t>(agent_id));
  const Place& shop = world.places.at(static_cast<std::size_t>(shop_id));
  if (!IsShop(shop.kind)) throw std::invalid_argument("purchases happen only at shops");
  assert(agent.current_place == shop_id);
  const Money paid = std::min(amount, std::max<Money>(agent.wealth, 0));
  if (paid <= 0) return result;
  const bool essential = shop.kind == PlaceKind::kEssentialShop;
  world.ledger.Transfer(world, Party::OfAgent(agent_id), Party::OfPlace(shop_id), paid,
                        essential ? Reason::kPurchaseEssential : Reason::kPurchaseNonessential);
  result.paid = paid;
  if (essential) {
    result.stock_added = static_cast<double>(paid) /
                         static_cast<double>(world.config.economy.essential_price_per_day);
    agent.essential_stock += result.stock_added;
  }
  return result;
}

SettlementReport SettleDay(World& world) {
  SettlementReport report;
  const EconomyParams& econ = world.config.economy;
  const Money wage = econ.wage_per_day;
  const bool workday = world.config.schedule.HasWork(world.clock.is_weekend());

  // Employers pay whoever worked, as far as their balance allows.
  for (Place& employer : world.places) {
    for (AgentId id : employer.employees) {
      const Agent& a = world.agents[static_cast<std::size_t>(id)];
      if (!a.alive() || !a.worked_today) continue;
      const Money pay = std::clamp<Money>(employer.wealth, 0, wage);
      report.wage_shortfall += wage - pay;
      PayWage(world, Party::OfPlace(employer.id), id, pay, report);
    }
  }

  if (world.government.wage_takeover_active && workday) {
    for (const Place& employer : world.places) {
      if (!IsPlaceClosed(employer, world.active_policies)) continue;
      for (AgentId id : employer.employees) {
        const Agent& a = world.agents[static_cast<std::size_t>(id)];
        if (!a.alive() || a.worked_today) continue;
        PayWage(world, Party::OfGovernment(), id, GovernmentCanPay(world, wage), report);
      }
    }
  }

  for (const Agent& a : world.agents) {
    if (!a.alive()) continue;
    const bool eligible = a.age_group == AgeGroup::kRetiree || a.age_group == AgeGroup::kStudent ||
                          (a.age_group == AgeGroup::kWorker && !a.employed());
    if (!eligible) continue;
    const Money amount = GovernmentCanPay(world, world.government.subsidy_per_unemployed);
    if (amount <= 0) continue;
    world.ledger.Transfer(world, Party::OfGovernment(), Party::OfAgent(a.id), amount,
                          Reason::kSubsidy);
    report.subsidies_paid += amount;
  }

  std::vector<PlaceId> publics;
  for (const Place& p : world.places) {
    if (IsPublicEmployer(p.kind)) publics.push_back(p.id);
  }
  const Money budget = GovernmentCanPay(world, world.government.public_service_cost);
  if (!publics.empty() && budget > 0) {
    const auto n = static_cast<Money>(publics.size());
    for (std::size_t i = 0; i < publics.size(); ++i) {
      const Money share = budget / n + (static_cast<Money>(i) < budget % n ? 1 : 0);
      if (share <= 0) continue;
      world.ledger.Transfer(world, Party::OfGovernment(), Party::OfPlace(publics[i]), share,
                            Reason::kPublicService);
      report.public_service_paid += share;
    }
  }

  if (econ.fixed_costs_enabled && econ.fixed_cost_per_day > 0) {
    for (Place& p : world.places) {
      if (!IsShop(p.kind)) continue;
      world.ledger.Transfer(world, Party::OfPlace(p.id), Party::OfGovernment(),
                            econ.fixed_cost_per_day, Reason::kFixedCost);
      report.fixed_costs_paid += econ.fixed_cost_per_day;
      if (p.wealth < 0) p.insolvent = true;
    }
  }
  return report;
}

}  // namespace needsim
