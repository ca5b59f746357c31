//! Brute-force oracle over raw Cayley tables. Subsets are u32 bitmasks, so
//! only structures of order at most 16 are supported. Nothing here calls
//! the library beyond reading its tables.

#![allow(dead_code)]

use radform::module::Module;
use radform::ring::Ring;

pub type Mask = u32;

pub fn members(s: Mask) -> Vec<usize> {
    (0..32).filter(|i| s >> i & 1 == 1).collect()
}

pub fn mask(v: &[usize]) -> Mask {
    v.iter().fold(0, |m, &i| m | 1 << i)
}

fn subset(a: Mask, b: Mask) -> bool {
    a & !b == 0
}

pub struct RingOracle {
    pub n: usize,
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
    pub zero: usize,
}

impl RingOracle {
    pub fn new(r: &Ring) -> Self {
        assert!(r.order() <= 16);
        let add = r.add_table();
        // the zero is the additive identity, found from the table
        let zero = (0..r.order()).find(|&z| (0..r.order()).all(|x| add[z][x] == x)).unwrap();
        RingOracle {
            n: r.order(),
            add,
            mul: r.mul_table(),
            zero,
        }
    }

    pub fn full(&self) -> Mask {
        ((1u64 << self.n) - 1) as Mask
    }

    fn add_close(&self, mut s: Mask) -> Mask {
        s |= 1 << self.zero;
        loop {
            let mut t = s;
            for a in members(s) {
                for b in members(s) {
                    t |= 1 << self.add[a][b];
                }
            }
            if t == s {
                return s;
            }
            s = t;
        }
    }

    /// Every subset that is a two-sided ideal, by a full scan.
    pub fn ideals(&self) -> Vec<Mask> {
        (0..=self.full())
            .filter(|&s| {
                s >> self.zero & 1 == 1
                    && members(s).iter().all(|&a| {
                        members(s).iter().all(|&b| s >> self.add[a][b] & 1 == 1)
                            && (0..self.n).all(|r| s >> self.mul[r][a] & 1 == 1 && s >> self.mul[a][r] & 1 == 1)
                    })
            })
            .collect()
    }

    /// AB as the additive closure of all products.
    pub fn product(&self, a: Mask, b: Mask) -> Mask {
        let mut s = 0;
        for x in members(a) {
            for y in members(b) {
                s |= 1 << self.mul[x][y];
            }
        }
        self.add_close(s)
    }

    pub fn is_prime(&self, p: Mask, ideals: &[Mask]) -> bool {
        p != self.full()
            && ideals
                .iter()
                .all(|&a| ideals.iter().all(|&b| !subset(self.product(a, b), p) || subset(a, p) || subset(b, p)))
    }

    pub fn is_completely_prime(&self, p: Mask) -> bool {
        p != self.full()
            && (0..self.n).all(|a| (0..self.n).all(|b| p >> self.mul[a][b] & 1 == 0 || p >> a & 1 == 1 || p >> b & 1 == 1))
    }

    pub fn beta(&self) -> Mask {
        let ideals = self.ideals();
        ideals
            .iter()
            .filter(|&&p| self.is_prime(p, &ideals))
            .fold(self.full(), |acc, &p| acc & p)
    }

    pub fn beta_co(&self) -> Mask {
        self.ideals()
            .iter()
            .filter(|&&p| self.is_completely_prime(p))
            .fold(self.full(), |acc, &p| acc & p)
    }

    pub fn nilpotents(&self) -> Mask {
        let mut s = 0;
        for a in 0..self.n {
            let mut x = a;
            for _ in 0..=self.n {
                if x == self.zero {
                    s |= 1 << a;
                    break;
                }
                x = self.mul[x][a];
            }
        }
        s
    }

    /// r^k for k >= 1, up to the point where the sequence must cycle.
    pub fn powers(&self, r: usize) -> Vec<usize> {
        let mut out = vec![r];
        for _ in 0..self.n {
            let last = *out.last().unwrap();
            out.push(self.mul[last][r]);
        }
        out
    }
}

pub struct ModuleOracle {
    pub ring: RingOracle,
    pub n: usize,
    pub add: Vec<Vec<usize>>,
    pub act: Vec<Vec<usize>>,
    pub zero: usize,
}

impl ModuleOracle {
    pub fn new(m: &Module) -> Self {
        assert!(m.order() <= 16);
        let add = m.add_table();
        let zero = (0..m.order()).find(|&z| (0..m.order()).all(|x| add[z][x] == x)).unwrap();
        ModuleOracle {
            ring: RingOracle::new(m.ring()),
            n: m.order(),
            add,
            act: m.act_table(),
            zero,
        }
    }

    pub fn full(&self) -> Mask {
        ((1u64 << self.n) - 1) as Mask
    }

    fn is_submodule(&self, s: &Mask) -> bool {
        let s = *s;
        s >> self.zero & 1 == 1
            && members(s).iter().all(|&x| {
                members(s).iter().all(|&y| s >> self.add[x][y] & 1 == 1)
                    && (0..self.ring.n).all(|r| s >> self.act[r][x] & 1 == 1)
            })
    }

    /// Every subset that is a submodule, by a full scan.
    pub fn submodules(&self) -> Vec<Mask> {
        (0..=self.full()).filter(|s| self.is_submodule(s)).collect()
    }

    /// Smallest submodule containing `s`.
    pub fn generated(&self, s: Mask, subs: &[Mask]) -> Mask {
        subs.iter().filter(|&&t| subset(s, t)).fold(self.full(), |acc, &t| acc & t)
    }

    /// AN as the additive closure of all an.
    pub fn product(&self, a: Mask, n: Mask) -> Mask {
        let mut s = 1 << self.zero;
        for r in members(a) {
            for x in members(n) {
                s |= 1 << self.act[r][x];
            }
        }
        loop {
            let mut t = s;
            for x in members(s) {
                for y in members(s) {
                    t |= 1 << self.add[x][y];
                }
            }
            if t == s {
                return s;
            }
            s = t;
        }
    }

    pub fn is_prime(&self, p: Mask, subs: &[Mask], ideals: &[Mask]) -> bool {
        p != self.full()
            && ideals.iter().all(|&a| {
                let am = self.product(a, self.full());
                subs.iter()
                    .all(|&n| !subset(self.product(a, n), p) || subset(n, p) || subset(am, p))
            })
    }

    pub fn is_completely_prime(&self, p: Mask) -> bool {
        p != self.full()
            && (0..self.ring.n).all(|a| {
                let am_in = (0..self.n).all(|x| p >> self.act[a][x] & 1 == 1);
                am_in || (0..self.n).all(|m| p >> self.act[a][m] & 1 == 0 || p >> m & 1 == 1)
            })
    }

    pub fn beta(&self, n: Mask) -> Mask {
        let subs = self.submodules();
        let ideals = self.ring.ideals();
        subs.iter()
            .filter(|&&p| subset(n, p) && self.is_prime(p, &subs, &ideals))
            .fold(self.full(), |acc, &p| acc & p)
    }

    pub fn beta_co(&self, n: Mask) -> Mask {
        self.submodules()
            .iter()
            .filter(|&&p| subset(n, p) && self.is_completely_prime(p))
            .fold(self.full(), |acc, &p| acc & p)
    }

    /// { rm : r^k m in N for some k >= 1 }
    pub fn envelope(&self, n: Mask) -> Mask {
        let mut e = 0;
        for r in 0..self.ring.n {
            let pw = self.ring.powers(r);
            for m in 0..self.n {
                if pw.iter().any(|&q| n >> self.act[q][m] & 1 == 1) {
                    e |= 1 << self.act[r][m];
                }
            }
        }
        e
    }

    pub fn radical_formula(&self, n: Mask) -> bool {
        self.generated(self.envelope(n), &self.submodules()) == self.beta(n)
    }
}
