#pragma once

#include "algomev/chain/model.hpp"

#include <string>

namespace algomev {

// Identity of a repeated transaction shape. Receivers collapse to a class
// (self / other) so fan-out payouts share one key; asset and app id are kept.
struct PatternKey {
  std::string sender;
  TxnKind kind = TxnKind::pay;
  std::string shape;

  // "kind|shape", the sender-free part used in CSV output.
  std::string pattern() const { return std::string(to_string(kind)) + "|" + shape; }
  std::string canonical() const { return sender + "|" + pattern(); }

  bool operator==(const PatternKey&) const = default;
};

inline std::string txn_shape(const Txn& t) {
  switch (t.kind) {
    case TxnKind::pay:
    case TxnKind::axfer: {
      const bool self = t.receiver && *t.receiver == t.sender;
      return std::string("rcv=") + (self ? "self" : "other") + ";asset=" + std::to_string(t.transfer_asset().value);
    }
    case TxnKind::appl:
      return "app=" + std::to_string(t.app_id.value_or(0));
    case TxnKind::other:
      return "other";
  }
  return "other";
}

inline PatternKey pattern_key(const Txn& t) { return {t.sender, t.kind, txn_shape(t)}; }

// Singleton groups key like their transaction; real groups key on the
// ordered member-kind signature.
inline PatternKey pattern_key(const TxnGroup& g) {
  if (g.synthetic && g.txns.size() == 1) return pattern_key(g.txns.front());
  std::string sig = "group=";
  for (std::size_t i = 0; i < g.txns.size(); ++i) {
    if (i) sig += '+';
    sig += to_string(g.txns[i].kind);
  }
  return {g.economic_sender(), g.txns.front().kind, sig};
}

}  // namespace algomev
