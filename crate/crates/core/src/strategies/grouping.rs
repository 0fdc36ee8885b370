use super::{pairs, Strategy};
use crate::error::Result;
use crate::meq::{MeqQuery, Session};

/// Groups of player indices in order of creation; each group is ascending
/// and its first member is the representative.
pub type Partition = Vec<Vec<usize>>;

/// Partitions the players by input equality. Each player is compared with the
/// representative of every existing group until one matches, so all-distinct
/// inputs cost exactly `k(k−1)/2` queries.
#[derive(Debug, Clone)]
pub struct GroupByEq {
    pub k: usize,
    pub n: usize,
}

impl GroupByEq {
    pub fn new(k: usize, n: usize) -> Self {
        Self { k, n }
    }

    /// Grouping loop shared by the wrappers. `stop` sees the answer of every
    /// query and ends the run early when it returns true.
    fn group(&self, session: &mut Session<'_>, mut stop: impl FnMut(bool) -> bool) -> Result<(Partition, bool)> {
        let mut groups: Partition = Vec::new();
        'players: for p in 0..self.k {
            for g in groups.iter_mut() {
                let same = session.ask(MeqQuery::eq(g[0], p, self.n))?;
                if stop(same) {
                    return Ok((groups, true));
                }
                if same {
                    g.push(p);
                    continue 'players;
                }
            }
            groups.push(vec![p]);
        }
        Ok((groups, false))
    }
}

impl Strategy for GroupByEq {
    type Output = Partition;

    fn name(&self) -> &'static str {
        "group_by_eq"
    }

    fn declared_depth(&self) -> usize {
        pairs(self.k)
    }

    fn run(&self, session: &mut Session<'_>) -> Result<Partition> {
        self.group(session, |_| false).map(|(g, _)| g)
    }
}

/// Are all inputs equal? Compares everyone with player 0 and stops at the
/// first mismatch.
#[derive(Debug, Clone)]
pub struct AllEq {
    pub k: usize,
    pub n: usize,
}

impl Strategy for AllEq {
    type Output = bool;

    fn name(&self) -> &'static str {
        "all_eq"
    }

    fn declared_depth(&self) -> usize {
        self.k.saturating_sub(1)
    }

    fn run(&self, session: &mut Session<'_>) -> Result<bool> {
        for p in 1..self.k {
            if !session.ask(MeqQuery::eq(0, p, self.n))? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Do two players share an input? Grouping that stops at the first match.
#[derive(Debug, Clone)]
pub struct ExistsEq {
    pub k: usize,
    pub n: usize,
}

impl Strategy for ExistsEq {
    type Output = bool;

    fn name(&self) -> &'static str {
        "exists_eq"
    }

    fn declared_depth(&self) -> usize {
        pairs(self.k)
    }

    fn run(&self, session: &mut Session<'_>) -> Result<bool> {
        GroupByEq::new(self.k, self.n).group(session, |same| same).map(|(_, found)| found)
    }
}

/// `F_p = Σ_w f_w^p` over the distinct inputs `w` with multiplicities `f_w`.
pub fn frequency_moment(partition: &Partition, p: u32) -> u128 {
    partition.iter().map(|g| (g.len() as u128).pow(p)).sum()
}

#[derive(Debug, Clone)]
pub struct FrequencyMoment {
    pub k: usize,
    pub n: usize,
    pub p: u32,
}

impl Strategy for FrequencyMoment {
    type Output = u128;

    fn name(&self) -> &'static str {
        "frequency_moment"
    }

    fn declared_depth(&self) -> usize {
        pairs(self.k)
    }

    fn run(&self, session: &mut Session<'_>) -> Result<u128> {
        let groups = GroupByEq::new(self.k, self.n).run(session)?;
        Ok(frequency_moment(&groups, self.p))
    }
}
