#include "expdiff/parallel.hpp"

#include <atomic>

namespace expdiff {

namespace {
std::atomic<Exec> g_default{Exec::Parallel};
}

Exec default_exec() { return g_default.load(); }
void set_default_exec(Exec exec) { g_default.store(exec); }

}  // namespace expdiff
