#pragma once

#include <cstdint>

namespace edgechain::contract {

/// Gas charged per operation. The defaults are normative; scenario files
/// may override individual entries.
struct GasSchedule {
  std::uint64_t base_tx = 21;
  std::uint64_t per_payload_byte = 1;
  std::uint64_t register_device = 50;
  std::uint64_t submit_data = 10;
  std::uint64_t report_malicious = 30;
  std::uint64_t distribute = 100;
  std::uint64_t migrate = 500;
  std::uint64_t init_surcharge = 200;
  std::uint64_t permission_update = 15;

  bool operator==(const GasSchedule&) const = default;

  bool valid() const { return base_tx >= 1; }
};

}  // namespace edgechain::contract
