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

#ifndef NEEDSIM_ECONOMY_H_
#define NEEDSIM_ECONOMY_H_

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

#include "needsim/model.h"
#include "needsim/types.h"

namespace needsim {

struct World;

struct EconomyParams {
  std::array<Money, kNumAgeGroups> initial_wealth{300, 1500, 5000, 4000};
  // Starting balance of every place of a kind. Homes and stations hold none.
  std::array<Money, kNumPlaceKinds> place_initial_wealth{0, 4000, 4000, 4000, 4000, 4000, 4000, 0};
  Money government_initial_reserves = 60000;
  Money wage_per_day = 100;
  double tax_rate = 0.3;
  // Paid daily to retirees, students and workers without an employer.
  Money subsidy_per_day = 45;
  // Daily government spending on schools, hospitals and other public
  // employers, split evenly across them.
  Money public_service_cost = 4000;
  Money essential_price_per_day = 10;
  Money nonessential_price = 25;
  Money leisure_price = 15;
  bool fixed_costs_enabled = false;
  Money fixed_cost_per_day = 250;
  bool allow_government_deficit = true;
  // Days of supplies each non-child agent uses up per day.
  double essential_consumption_per_day = 1.0;
  double initial_stock_days_min = 6.0;
  double initial_stock_days_max = 14.0;
  // Wealth at which financial survival and financial safety are satisfied.
  Money financial_survival_buffer = 300;
  Money financial_safety_buffer = 3000;

  bool operator==(const EconomyParams&) const = default;
};

// Throws std::invalid_argument naming the offending parameter.
void ValidateEconomyParams(const EconomyParams& p);

struct Government {
  Money reserves = 0;
  double tax_rate = 0.0;
  Money subsidy_per_unemployed = 0;
  bool wage_takeover_active = false;
  Money public_service_cost = 0;

  bool operator==(const Government&) const = default;
};

enum class Reason : std::uint8_t {
  kWage,
  kTax,
  kSubsidy,
  kPurchaseEssential,
  kPurchaseNonessential,
  kFixedCost,
  kPublicService,
};
inline constexpr std::size_t kNumReasons = 7;
std::string_view ToString(Reason r);

struct Party {
  enum class Kind : std::uint8_t { kAgent, kPlace, kGovernment };
  Kind kind = Kind::kGovernment;
  std::int32_t id = -1;

  static Party OfAgent(AgentId a) { return {Kind::kAgent, a}; }
  static Party OfPlace(PlaceId p) { return {Kind::kPlace, p}; }
  static Party OfGovernment() { return {Kind::kGovernment, -1}; }

  bool operator==(const Party&) const = default;
};

struct LedgerEntry {
  Tick tick = 0;
  Party payer;
  Party payee;
  Money amount = 0;
  Reason reason = Reason::kWage;

  bool operator==(const LedgerEntry&) const = default;
};

// Append-only. Every wealth mutation goes through Ledger::Transfer.
class Ledger {
 public:
  const std::vector<LedgerEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  // Moves amount (> 0) between the two parties and records it.
  void Transfer(World& world, Party payer, Party payee, Money amount, Reason reason);

  bool operator==(const Ledger&) const = default;

 private:
  std::vector<LedgerEntry> entries_;
};

struct WealthSnapshot {
  std::vector<Money> agents;
  std::vector<Money> places;
  Money government = 0;

  bool operator==(const WealthSnapshot&) const = default;
};

WealthSnapshot TakeWealthSnapshot(const World& world);

// Applies every ledger entry to the starting balances.
WealthSnapshot ReplayLedger(const WealthSnapshot& initial, const Ledger& ledger);

// Sum of agent, place and government wealth.
Money TotalMoney(const World& world);

// Purchase volume over the window divided by total money times window length.
double MoneyVelocity(const Ledger& ledger, std::int64_t first_day, int window_days,
                     int ticks_per_day, Money total_money);

struct Purchase {
  Money paid = 0;
  double stock_added = 0.0;
};

// Moves up to `amount` from agent to shop, scaled down to what the agent can
// afford. Essential purchases add paid / price_per_day days of supplies.
Purchase Transact(World& world, AgentId agent, PlaceId shop, Money amount);

struct SettlementReport {
  Money wages_paid = 0;
  Money wages_by_government = 0;
  Money tax_collected = 0;
  Money subsidies_paid = 0;
  Money public_service_paid = 0;
  Money fixed_costs_paid = 0;
  Money wage_shortfall = 0;
};

// End-of-day settlement: wages, wage takeover, tax, subsidies, public
// service spending and (optionally) fixed costs, in that order.
SettlementReport SettleDay(World& world);

}  // namespace needsim

#endif  // NEEDSIM_ECONOMY_H_
