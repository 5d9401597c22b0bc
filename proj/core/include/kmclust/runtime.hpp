#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "kmclust/partition.hpp"
#include "kmclust/rat.hpp"

namespace kmclust {

struct BandwidthViolation : std::logic_error {
  explicit BandwidthViolation(const std::string& what) : std::logic_error(what) {}
};

// One point-to-point message. A word carries one vertex-id or one scalar
// value; a message holds at most `Cluster::word_cap()` words.
struct Message {
  MachineId src = 0;
  MachineId dst = 0;
  std::vector<Rat> words;
};

// Cost meter of a run. Simulated rounds and charged rounds are separate
// counters and are never mixed.
struct RoundLedger {
  std::int64_t rounds = 0;
  std::int64_t messages = 0;
  std::int64_t words = 0;
  std::int64_t supersteps = 0;
  std::int64_t max_queue_seen = 0;             // longest per-pair queue in any superstep
  std::int64_t charged_rounds = 0;
  std::map<std::string, std::int64_t> charged_by_subroutine;
  std::map<std::pair<MachineId, MachineId>, std::int64_t> link_messages;
  std::map<std::pair<MachineId, MachineId>, std::int64_t> link_max_queue;

  std::int64_t busiest_link_total() const;
  std::string to_json() const;
};

struct ChargePolicy {
  bool enabled = false;
  Rat constant{1};
  int log_exponent = 3;
};

// Book rounds for one SSSP-sized call without simulating it:
// charged_rounds += ceil(C * (n/k) * ceil(log2 n)^log_exponent / eps^2).
// `calls` charges several identical calls at once.
void charge(RoundLedger& ledger, const ChargePolicy& policy, const std::string& subroutine,
            VertexId n, MachineId k, const Rat& eps, std::int64_t calls = 1);

// Synchronous message substrate: machines enqueue during a superstep; flush()
// delivers everything at the barrier and books max-over-ordered-pairs rounds,
// i.e. machines pipeline per-link queues one message per round.
class Cluster {
 public:
  explicit Cluster(MachineId k, int word_cap = 4);

  MachineId k() const { return k_; }
  int word_cap() const { return word_cap_; }

  void send(MachineId src, MachineId dst, std::vector<Rat> words);
  // same payload to all k-1 other machines
  void broadcast_all(MachineId src, const std::vector<Rat>& words);

  // Delivers all queued messages grouped by destination machine, in a
  // deterministic (src, enqueue-order) order.
  std::vector<std::vector<Message>> flush(RoundLedger& ledger);

  bool idle() const { return pending_ == 0; }

 private:
  MachineId k_;
  int word_cap_;
  std::size_t pending_ = 0;
  std::vector<std::vector<Message>> queues_;  // indexed src * k + dst
};

}  // namespace kmclust
