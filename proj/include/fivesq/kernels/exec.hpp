#pragma once

namespace fivesq {

// Selects the OpenMP kernels or their serial reference twins.
enum class Exec { Serial, Parallel };

}  // namespace fivesq
