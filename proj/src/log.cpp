#include "qpsf/log.hpp"

#include <iostream>
#include <mutex>
#include <utility>

namespace qpsf {
namespace {

std::mutex sink_mutex;

WarningSink& sink() {
  static WarningSink current = [](std::string_view message) {
    std::cerr << "qpsf: warning: " << message << '\n';
  };
  return current;
}

}  // namespace

WarningSink set_warning_sink(WarningSink replacement) {
  std::lock_guard lock(sink_mutex);
  return std::exchange(sink(), std::move(replacement));
}

void warn(std::string_view message) {
  std::lock_guard lock(sink_mutex);
  if (sink()) sink()(message);
}

}  // namespace qpsf
