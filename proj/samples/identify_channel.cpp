// Identifies the 2-tap reference channel from noisy input/output pairs with
// the batch MCCC solver and with least squares, under impulsive noise.

#include <cstdio>

#include "ccorr/channel.hpp"

int main() {
  using namespace ccorr;
  const ChannelModel channel = ChannelModel::reference();
  const cvector w_true{std::conj(channel.taps()[0]), std::conj(channel.taps()[1])};

  Rng rng(7);
  const Constellation qam = make_16qam();
  cvector symbols(400);
  for (complex& s : symbols) s = qam.point(rng.uniform_index(qam.size()));

  NoiseSpec noise;
  noise.alpha = 1.2;
  noise.gamma = 0.05;
  const cvector eta = sample_alpha_stable(noise, symbols.size(), rng);

  // d_k = w_true^H [a_k, a_{k-1}] + noise
  std::vector<Regressor> batch;
  for (std::size_t k = 0; k < symbols.size(); ++k) {
    Regressor r{{symbols[k], k ? symbols[k - 1] : complex{}}, {}};
    r.d = inner(w_true, r.x) + eta[k];
    batch.push_back(r);
  }

  const auto [mccc, report] = mccc_fixed_point(batch, KernelSpec(1.0), cvector(2));
  // sigma = 1e6 makes every kernel weight equal: ordinary least squares.
  const auto [ls, ls_report] = mccc_fixed_point(batch, KernelSpec(1e6), cvector(2));

  std::printf("true   w = [% .4f%+.4fj, % .4f%+.4fj]\n", w_true[0].real(), w_true[0].imag(), w_true[1].real(),
              w_true[1].imag());
  std::printf("MCCC   w = [% .4f%+.4fj, % .4f%+.4fj]  error %.2e  (%zu iterations)\n", mccc.w[0].real(),
              mccc.w[0].imag(), mccc.w[1].real(), mccc.w[1].imag(), distance(mccc.w, w_true), report.iterations);
  std::printf("LS     w = [% .4f%+.4fj, % .4f%+.4fj]  error %.2e\n", ls.w[0].real(), ls.w[0].imag(), ls.w[1].real(),
              ls.w[1].imag(), distance(ls.w, w_true));
  return 0;
}
