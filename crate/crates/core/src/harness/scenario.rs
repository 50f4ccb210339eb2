use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::channel::{ChannelModel, ChannelRealization};
use crate::codebook::{build_codebook, CimCodebook, Strategy};
use crate::signal_chain::{build_whitening, Link, RadioParams, SymbolMapper, WhiteningFilter};
use crate::{Error, Result};

use super::SimConfig;

/// Upper limit on channel redraws after singular combiners.
const MAX_REDRAWS: u32 = 1000;

/// Independent random stream for work unit `index` under `seed`.
///
/// Results depend only on `(seed, index)`, never on scheduling.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Everything needed to turn a random stream into a ready-to-use link.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub model: ChannelModel,
    pub strategy: Strategy,
    pub mapper: SymbolMapper,
    pub radio: RadioParams,
    /// Rigid cluster displacement (radians) between codebook construction
    /// and transmission.
    pub angle_shift: f64,
}

/// One prepared channel use.
#[derive(Debug, Clone)]
pub struct Trial {
    /// The draw the codebook and filter were built from.
    pub realization: ChannelRealization,
    pub codebook: CimCodebook,
    pub filter: WhiteningFilter,
    /// Bound to the (possibly displaced) channel the signal crosses.
    pub link: Link,
    /// Draws discarded because the combiner was singular.
    pub redraws: u32,
}

impl Scenario {
    pub fn from_config(cfg: &SimConfig) -> Result<Self> {
        Ok(Self {
            model: cfg.channel_model()?,
            strategy: cfg.strategy,
            mapper: SymbolMapper::new(cfg.codebook_order(), cfg.m)?,
            radio: cfg.radio(),
            angle_shift: cfg.angle_perturb_deg.unwrap_or(0.0).to_radians(),
        })
    }

    /// Prepares trial `index` from its own stream.
    pub fn prepare_trial(&self, seed: u64, index: u64) -> Result<Trial> {
        self.prepare(&mut trial_rng(seed, index))
    }

    /// Draws a channel, builds the codebook (ranked at unit power; the
    /// selection does not depend on `P`) and the whitening filter, and binds
    /// them into a [`Link`]. Draws with a singular combiner are discarded.
    pub fn prepare(&self, rng: &mut ChaCha8Rng) -> Result<Trial> {
        let order = self.mapper.codebook_order();
        let mut redraws = 0;
        loop {
            let realization = self.model.draw(rng)?;
            let f_t = realization.tx_beamformer();
            let codebook = build_codebook(
                self.strategy,
                &realization,
                &f_t,
                order,
                1.0,
                self.radio.gain_amplitude,
                rng,
            )?;
            let filter = match build_whitening(&codebook.combiner, self.radio.noise_variance) {
                Ok(f) => f,
                Err(Error::SingularCombiner { .. }) if redraws < MAX_REDRAWS => {
                    redraws += 1;
                    continue;
                }
                Err(e) => return Err(e),
            };
            let link = if self.angle_shift == 0.0 {
                Link::new(
                    &realization,
                    &codebook,
                    &filter,
                    &f_t,
                    self.radio,
                    self.mapper,
                )?
            } else {
                let actual = realization.with_cluster_shift(self.angle_shift);
                Link::new(&actual, &codebook, &filter, &f_t, self.radio, self.mapper)?
            };
            return Ok(Trial {
                realization,
                codebook,
                filter,
                link,
                redraws,
            });
        }
    }
}
