#include "kmclust/runtime.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"
#include "kmclust/wide_rat.hpp"

namespace kmclust {

std::int64_t RoundLedger::busiest_link_total() const {
  std::int64_t best = 0;
  for (const auto& [link, count] : link_messages) best = std::max(best, count);
  return best;
}

std::string RoundLedger::to_json() const {
  nlohmann::json j;
  j["rounds"] = rounds;
  j["charged_rounds"] = charged_rounds;
  j["messages"] = messages;
  j["words"] = words;
  j["supersteps"] = supersteps;
  j["max_queue_seen"] = max_queue_seen;
  auto& per = j["per_subroutine"] = nlohmann::json::object();
  for (const auto& [name, amount] : charged_by_subroutine) per[name] = amount;
  return j.dump();
}

void charge(RoundLedger& ledger, const ChargePolicy& policy, const std::string& subroutine,
            VertexId n, MachineId k, const Rat& eps, std::int64_t calls) {
  if (!policy.enabled || calls == 0) return;
  if (n < 1 || k < 1 || !eps.is_positive()) throw std::invalid_argument("bad charge arguments");
  int log_n = 0;
  while ((VertexId{1} << log_n) < n) ++log_n;  // ceil(log2 n), 0 for n = 1
  WideRat amount = to_wide(policy.constant) * WideRat(n, k);
  WideRat logpow(1);
  for (int i = 0; i < policy.log_exponent; ++i) logpow *= log_n;
  amount *= logpow;
  amount /= to_wide(eps) * to_wide(eps);
  WideInt units;
  mpz_cdiv_q(units.get_mpz_t(), amount.get_num_mpz_t(), amount.get_den_mpz_t());
  std::int64_t per_call = units.get_si();
  ledger.charged_rounds += per_call * calls;
  ledger.charged_by_subroutine[subroutine] += per_call * calls;
}

Cluster::Cluster(MachineId k, int word_cap) : k_(k), word_cap_(word_cap) {
  if (k < 1) throw std::invalid_argument("cluster needs k >= 1");
  queues_.resize(static_cast<std::size_t>(k) * k);
}

void Cluster::send(MachineId src, MachineId dst, std::vector<Rat> words) {
  if (src < 0 || src >= k_ || dst < 0 || dst >= k_ || src == dst)
    throw std::invalid_argument("bad machine pair");
  if (static_cast<int>(words.size()) > word_cap_)
    throw BandwidthViolation("message of " + std::to_string(words.size()) +
                             " words exceeds the cap of " + std::to_string(word_cap_));
  queues_[static_cast<std::size_t>(src) * k_ + dst].push_back({src, dst, std::move(words)});
  ++pending_;
}

void Cluster::broadcast_all(MachineId src, const std::vector<Rat>& words) {
  for (MachineId dst = 0; dst < k_; ++dst)
    if (dst != src) send(src, dst, words);
}

std::vector<std::vector<Message>> Cluster::flush(RoundLedger& ledger) {
  std::vector<std::vector<Message>> inboxes(k_);
  std::int64_t max_queue = 0;
  for (MachineId src = 0; src < k_; ++src) {
    for (MachineId dst = 0; dst < k_; ++dst) {
      auto& q = queues_[static_cast<std::size_t>(src) * k_ + dst];
      if (q.empty()) continue;
      max_queue = std::max(max_queue, static_cast<std::int64_t>(q.size()));
      ledger.messages += static_cast<std::int64_t>(q.size());
      ledger.link_messages[{src, dst}] += static_cast<std::int64_t>(q.size());
      auto& link_max = ledger.link_max_queue[{src, dst}];
      link_max = std::max(link_max, static_cast<std::int64_t>(q.size()));
      for (auto& msg : q) {
        ledger.words += static_cast<std::int64_t>(msg.words.size());
        inboxes[dst].push_back(std::move(msg));
      }
      q.clear();
    }
  }
  pending_ = 0;
  ledger.rounds += max_queue;
  ledger.max_queue_seen = std::max(ledger.max_queue_seen, max_queue);
  if (max_queue > 0) ++ledger.supersteps;
  return inboxes;
}

}  // namespace kmclust
