// Flies the generic quadrotor around a 2 m square at 1.5 m altitude using
// the position-hold flight mode, printing its position once per second.

#include <array>
#include <cstdio>
#include <vector>

#include "flyt/flyt.hpp"

int main() {
  flyt::Aviary aviary(flyt::LoopRates{240, 120, 30}, 7);
  const int id = aviary.add(flyt::make_drone(flyt::generic_quadx_config()));
  aviary.set_mode(id, flyt::FlightMode::kPosition);

  const std::array<std::array<double, 3>, 5> corners{{{0, 0, 1.5}, {2, 0, 1.5}, {2, 2, 1.5}, {0, 2, 1.5}, {0, 0, 1.5}}};
  for (const auto& c : corners) {
    const std::vector<double> setpoint{c[0], c[1], 0.0, c[2]};
    aviary.set_setpoint(id, setpoint);
    for (int step = 0; step < 4 * 30; ++step) {
      aviary.step();
      if ((step + 1) % 30 == 0) {
        const auto& s = aviary.drone(id).state();
        std::printf("t=%5.2f  x=%6.3f y=%6.3f z=%6.3f  yaw=%6.3f\n", aviary.elapsed(), s.position.x(), s.position.y(),
                    s.position.z(), s.orientation.yaw);
      }
    }
  }
  return 0;
}
