//! Built-in groups with their distinguished normal subgroups.

use charvan_core::{build_group, is_normal, PermGroup, Permutation};

use crate::error::{HarnessError, Result};

/// A group together with named normal subgroups.
#[derive(Debug, Clone)]
pub struct NamedGroup {
    pub name: String,
    pub group: PermGroup,
    pub normals: Vec<(String, PermGroup)>,
}

impl NamedGroup {
    /// Checks that every listed subgroup is a normal subgroup.
    pub fn new(name: &str, group: PermGroup, normals: Vec<(String, PermGroup)>) -> Result<Self> {
        for (id, n) in &normals {
            if !is_normal(&group, n)? {
                return Err(HarnessError::input(format!(
                    "subgroup {id} is not normal in {name}"
                )));
            }
        }
        Ok(NamedGroup {
            name: name.to_string(),
            group,
            normals,
        })
    }

    pub fn normal(&self, id: &str) -> Option<&PermGroup> {
        self.normals.iter().find(|(n, _)| n == id).map(|(_, g)| g)
    }

    pub fn order(&self) -> u64 {
        self.group.order()
    }
}

fn cycles(text: &str, degree: usize) -> Permutation {
    Permutation::parse(text, degree).expect("catalog generator is valid")
}

fn images(v: Vec<usize>) -> Permutation {
    Permutation::from_images(v).expect("catalog generator is a bijection")
}

fn gen_group(gens: &[Permutation]) -> PermGroup {
    build_group(gens).expect("catalog group within limits")
}

/// Right regular representation: generator `g` sends point `h` to `h g`.
fn regular(order: usize, mul: impl Fn(usize, usize) -> usize, gens: &[usize]) -> Vec<Permutation> {
    gens.iter()
        .map(|&g| images((0..order).map(|h| mul(h, g)).collect()))
        .collect()
}

fn cyclic_gens(n: usize) -> Vec<Permutation> {
    if n == 1 {
        return vec![Permutation::identity(1)];
    }
    vec![images((0..n).map(|i| (i + 1) % n).collect())]
}

fn symmetric_gens(n: usize) -> Vec<Permutation> {
    if n == 1 {
        return vec![Permutation::identity(1)];
    }
    let mut gens = vec![images((0..n).map(|i| (i + 1) % n).collect())];
    if n > 2 {
        gens.push(cycles("(1 2)", n));
    }
    gens
}

fn alternating_gens(n: usize) -> Vec<Permutation> {
    if n < 3 {
        return vec![Permutation::identity(n.max(1))];
    }
    (3..=n).map(|k| cycles(&format!("(1 2 {k})"), n)).collect()
}

/// Dicyclic group of order `4m`: elements `a^k x^e` with `a^(2m) = 1`,
/// `x^2 = a^m`, `x a x^-1 = a^-1`, encoded as `k + 2m e`.
fn dicyclic_gens(m: usize) -> (Vec<Permutation>, Vec<Permutation>) {
    let two_m = 2 * m;
    let mul = move |u: usize, v: usize| {
        let (k, e) = (u % two_m, u / two_m);
        let (l, f) = (v % two_m, v / two_m);
        let l = if e == 1 { (two_m - l) % two_m } else { l };
        let mut k = (k + l) % two_m;
        let mut e = e + f;
        if e == 2 {
            k = (k + m) % two_m;
            e = 0;
        }
        k + two_m * e
    };
    let gens = regular(4 * m, mul, &[1, two_m]);
    let rot = gens[..1].to_vec();
    (gens, rot)
}

/// Arithmetic in `F_8 = F_2[w]/(w^3 + w + 1)`, elements as 3-bit masks.
fn f8_mul(a: usize, b: usize) -> usize {
    let mut r = 0;
    for i in 0..3 {
        if b >> i & 1 == 1 {
            r ^= a << i;
        }
    }
    for i in (3..5).rev() {
        if r >> i & 1 == 1 {
            r ^= 0b1011 << (i - 3);
        }
    }
    r
}

fn f8_pow(a: usize, e: u32) -> usize {
    (0..e).fold(1, |acc, _| f8_mul(acc, a))
}

const W: usize = 0b010;

/// Affine maps of `F_8`: translation, multiplication by a primitive
/// element, and the Frobenius map.
fn affine_f8() -> (Permutation, Permutation, Permutation) {
    let t = images((0..8).map(|x| x ^ 1).collect());
    let m = images((0..8).map(|x| f8_mul(W, x)).collect());
    let f = images((0..8).map(|x| f8_mul(x, x)).collect());
    (t, m, f)
}

/// Borel subgroup of `Sz(8)` acting on `F_8^2`: the Suzuki 2-group
/// `(x, y) -> (x + a, y + b + a^4 x)` extended by the torus
/// `(x, y) -> (k x, k^5 y)`.
fn suzuki_borel() -> (Vec<Permutation>, Vec<Permutation>, Vec<Permutation>) {
    let point = |x: usize, y: usize| 8 * x + y;
    let translation = |a: usize, b: usize| {
        let a4 = f8_pow(a, 4);
        images(
            (0..64)
                .map(|p| {
                    let (x, y) = (p / 8, p % 8);
                    point(x ^ a, y ^ b ^ f8_mul(a4, x))
                })
                .collect(),
        )
    };
    let k5 = f8_pow(W, 5);
    let torus = images(
        (0..64)
            .map(|p| point(f8_mul(W, p / 8), f8_mul(k5, p % 8)))
            .collect(),
    );
    let basis = [1, W, f8_mul(W, W)];
    let mut two: Vec<Permutation> = basis.iter().map(|&a| translation(a, 0)).collect();
    let centre: Vec<Permutation> = basis.iter().map(|&b| translation(0, b)).collect();
    two.extend(centre.iter().cloned());
    let mut all = two.clone();
    all.push(torus);
    (all, two, centre)
}

/// `SL(2,3)` acting on the eight nonzero row vectors of `F_3^2`.
fn sl23() -> (Vec<Permutation>, Vec<Permutation>, Vec<Permutation>) {
    let vectors: Vec<(usize, usize)> = (0..9)
        .map(|i| (i / 3, i % 3))
        .filter(|&v| v != (0, 0))
        .collect();
    let index = |v: (usize, usize)| vectors.iter().position(|&w| w == v).unwrap();
    let act = |m: [[usize; 2]; 2]| {
        images(
            vectors
                .iter()
                .map(|&(a, b)| {
                    index((
                        (a * m[0][0] + b * m[1][0]) % 3,
                        (a * m[0][1] + b * m[1][1]) % 3,
                    ))
                })
                .collect(),
        )
    };
    let gens = vec![act([[1, 1], [0, 1]]), act([[0, 2], [1, 0]])];
    let q8 = vec![act([[0, 2], [1, 0]]), act([[1, 1], [1, 2]])];
    let z = vec![act([[2, 0], [0, 2]])];
    (gens, q8, z)
}

/// `Z_n` extended by multiplication by a unit of order exactly `m`.
fn metacyclic(n: usize, m: usize) -> Option<(Vec<Permutation>, Vec<Permutation>)> {
    let unit_order = |r: usize| {
        let mut x = r % n;
        let mut k = 1;
        while x != 1 {
            x = x * r % n;
            k += 1;
            if k > n {
                return None;
            }
        }
        Some(k)
    };
    let r = (2..n).find(|&r| unit_order(r) == Some(m))?;
    let shift = images((0..n).map(|x| (x + 1) % n).collect());
    let mult = images((0..n).map(|x| x * r % n).collect());
    Some((vec![shift.clone(), mult], vec![shift]))
}

fn parse_suffix(name: &str, prefix: &str) -> Option<usize> {
    name.strip_prefix(prefix)?.parse().ok()
}

/// Names accepted by [`builtin_group`], for help output.
pub const CATALOG_HELP: &str = "C<n>, D<2n>, Dic<4n>, Q8, Q16, V4, S<n>, A<n> (n <= 7), SL(2,3), \
AGammaL(1,8), AGL(1,8), SzSylNorm8, F20, F21, C<n>:C<m>, and direct products AxB";

/// Looks up a built-in group by name.
pub fn builtin_group(name: &str) -> Result<NamedGroup> {
    let name = name.trim();
    if name.contains('x') {
        let parts: Vec<&str> = name.split('x').collect();
        let factors = parts
            .iter()
            .map(|p| builtin_group(p))
            .collect::<Result<Vec<_>>>()?;
        return Ok(direct_product(name, &factors));
    }
    let unknown = || HarnessError::input(format!("unknown group {name:?}; known: {CATALOG_HELP}"));
    let single = |gens: Vec<Permutation>| -> Result<NamedGroup> {
        NamedGroup::new(name, gen_group(&gens), vec![])
    };
    match name {
        "V4" => return single(vec![cycles("(1 2)(3 4)", 4), cycles("(1 3)(2 4)", 4)]),
        "Q8" => {
            let i = cycles("(1 2 5 6)(3 8 7 4)", 8);
            let j = cycles("(1 3 5 7)(2 4 6 8)", 8);
            let g = gen_group(&[i.clone(), j]);
            let c4 = g.generate(&[i])?;
            return NamedGroup::new(name, g, vec![("C4".into(), c4)]);
        }
        "Q16" => return builtin_group("Dic16").map(|g| renamed(g, "Q16")),
        "SL(2,3)" => {
            let (gens, q8, z) = sl23();
            let g = gen_group(&gens);
            let normals = vec![
                ("Q8".into(), g.generate(&q8)?),
                ("Z".into(), g.generate(&z)?),
            ];
            return NamedGroup::new(name, g, normals);
        }
        "AGL(1,8)" | "AGammaL(1,8)" => {
            let (t, m, f) = affine_f8();
            let mut gens = vec![t.clone(), m.clone()];
            if name == "AGammaL(1,8)" {
                gens.push(f);
            }
            let g = gen_group(&gens);
            let e8 = normal_closure_of(&g, std::slice::from_ref(&t))?;
            let mut normals = vec![("E8".to_string(), e8)];
            if name == "AGammaL(1,8)" {
                normals.insert(0, ("N56".into(), g.generate(&[t, m])?));
            }
            return NamedGroup::new(name, g, normals);
        }
        "SzSylNorm8" => {
            let (gens, two, centre) = suzuki_borel();
            let g = gen_group(&gens);
            let normals = vec![
                ("N64".into(), g.generate(&two)?),
                ("Z64".into(), g.generate(&centre)?),
            ];
            return NamedGroup::new(name, g, normals);
        }
        "F20" | "F21" => {
            let (n, m) = if name == "F20" { (5, 4) } else { (7, 3) };
            let (gens, rot) = metacyclic(n, m).expect("unit of the right order");
            let g = gen_group(&gens);
            let mut normals = vec![(format!("C{n}"), g.generate(&rot)?)];
            if name == "F20" {
                let d10 = g.generate(&[rot[0].clone(), gens[1].pow(2)])?;
                normals.push(("D10".into(), d10));
            }
            return NamedGroup::new(name, g, normals);
        }
        _ => {}
    }
    if let Some((a, b)) = name.split_once(':') {
        let n = parse_suffix(a, "C").ok_or_else(unknown)?;
        let m = parse_suffix(b, "C").ok_or_else(unknown)?;
        let (gens, rot) = metacyclic(n, m).ok_or_else(|| {
            HarnessError::input(format!("no unit of order {m} modulo {n} for {name}"))
        })?;
        let g = gen_group(&gens);
        let rot = g.generate(&rot)?;
        return NamedGroup::new(name, g, vec![(a.to_string(), rot)]);
    }
    if let Some(order) = parse_suffix(name, "Dic") {
        if order < 8 || order % 4 != 0 {
            return Err(unknown());
        }
        let (gens, rot) = dicyclic_gens(order / 4);
        let g = gen_group(&gens);
        let c = g.generate(&rot)?;
        return NamedGroup::new(name, g, vec![(format!("C{}", order / 2), c)]);
    }
    if let Some(n) = parse_suffix(name, "C") {
        if n == 0 {
            return Err(unknown());
        }
        return single(cyclic_gens(n));
    }
    if let Some(order) = parse_suffix(name, "D") {
        if order < 4 || order % 2 != 0 {
            return Err(unknown());
        }
        if order == 4 {
            return builtin_group("V4").map(|g| renamed(g, "D4"));
        }
        let n = order / 2;
        let rot = images((0..n).map(|i| (i + 1) % n).collect());
        let refl = images((0..n).map(|i| (n - i) % n).collect());
        let g = gen_group(&[rot.clone(), refl]);
        let c = g.generate(&[rot])?;
        return NamedGroup::new(name, g, vec![(format!("C{n}"), c)]);
    }
    if let Some(n) = parse_suffix(name, "S") {
        if !(1..=7).contains(&n) {
            return Err(unknown());
        }
        let g = gen_group(&symmetric_gens(n));
        let mut normals = Vec::new();
        if n >= 2 {
            normals.push((format!("A{n}"), g.generate(&alternating_gens(n))?));
        }
        if n == 4 {
            normals.push((
                "V4".into(),
                g.generate(&[cycles("(1 2)(3 4)", 4), cycles("(1 3)(2 4)", 4)])?,
            ));
        }
        return NamedGroup::new(name, g, normals);
    }
    if let Some(n) = parse_suffix(name, "A") {
        if !(1..=7).contains(&n) {
            return Err(unknown());
        }
        let g = gen_group(&alternating_gens(n));
        let mut normals = Vec::new();
        if n == 4 {
            normals.push((
                "V4".into(),
                g.generate(&[cycles("(1 2)(3 4)", 4), cycles("(1 3)(2 4)", 4)])?,
            ));
        }
        return NamedGroup::new(name, g, normals);
    }
    Err(unknown())
}

fn renamed(mut g: NamedGroup, name: &str) -> NamedGroup {
    g.name = name.to_string();
    g
}

fn normal_closure_of(g: &PermGroup, s: &[Permutation]) -> Result<PermGroup> {
    Ok(charvan_core::normal_closure(g, s)?)
}

fn shift(p: &Permutation, offset: usize, degree: usize) -> Permutation {
    let mut v: Vec<usize> = (0..degree).collect();
    for i in 0..p.degree() {
        v[offset + i] = offset + p.image(i);
    }
    images(v)
}

/// Direct product on the disjoint union of the factors' points. Each
/// factor and each named normal subgroup of a factor becomes a named
/// normal subgroup; later duplicates of a name are dropped.
pub fn direct_product(name: &str, factors: &[NamedGroup]) -> NamedGroup {
    let degree: usize = factors.iter().map(|f| f.group.degree()).sum();
    let mut gens = Vec::new();
    let mut pieces: Vec<(String, Vec<Permutation>)> = Vec::new();
    let mut offset = 0;
    for f in factors {
        let embed = |h: &PermGroup| -> Vec<Permutation> {
            h.generators()
                .iter()
                .map(|p| shift(p, offset, degree))
                .collect()
        };
        gens.extend(embed(&f.group));
        pieces.push((f.name.clone(), embed(&f.group)));
        for (id, n) in &f.normals {
            pieces.push((id.clone(), embed(n)));
        }
        offset += f.group.degree();
    }
    let group = gen_group(&gens);
    let mut normals: Vec<(String, PermGroup)> = Vec::new();
    for (id, g) in pieces {
        if normals.iter().any(|(n, _)| *n == id) {
            continue;
        }
        let sub = group.generate(&g).expect("factor lies in the product");
        normals.push((id, sub));
    }
    NamedGroup {
        name: name.to_string(),
        group,
        normals,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use charvan_core::{is_nilpotent, sylow};

    #[test]
    fn orders() {
        let expect = [
            ("C1", 1),
            ("C12", 12),
            ("D8", 8),
            ("D4", 4),
            ("Dic12", 12),
            ("Q8", 8),
            ("Q16", 16),
            ("V4", 4),
            ("S4", 24),
            ("A5", 60),
            ("S7", 5040),
            ("A7", 2520),
            ("SL(2,3)", 24),
            ("AGammaL(1,8)", 168),
            ("AGL(1,8)", 56),
            ("SzSylNorm8", 448),
            ("F20", 20),
            ("F21", 21),
            ("C7:C3", 21),
            ("C13:C4", 52),
            ("Q8xC3", 24),
            ("D8xC3", 24),
            ("S3xS3", 36),
        ];
        for (name, order) in expect {
            assert_eq!(builtin_group(name).unwrap().order(), order, "{name}");
        }
    }

    #[test]
    fn named_normals() {
        let s4 = builtin_group("S4").unwrap();
        assert_eq!(s4.normal("A4").unwrap().order(), 12);
        let a = builtin_group("AGammaL(1,8)").unwrap();
        assert_eq!(a.normal("N56").unwrap().order(), 56);
        let sz = builtin_group("SzSylNorm8").unwrap();
        let n = sz.normal("N64").unwrap();
        assert_eq!(n.order(), 64);
        assert!(!n.is_abelian());
        assert!(n.same_as(&sylow(&sz.group, 2)));
        assert_eq!(sz.normal("Z64").unwrap().order(), 8);
        let sl = builtin_group("SL(2,3)").unwrap();
        assert_eq!(sl.normal("Q8").unwrap().order(), 8);
        assert!(is_nilpotent(sl.normal("Q8").unwrap()));
        assert_eq!(sl.normal("Z").unwrap().order(), 2);
        let q = builtin_group("Q8xC3").unwrap();
        assert_eq!(q.normal("Q8").unwrap().order(), 8);
        assert_eq!(q.normal("C3").unwrap().order(), 3);
        assert_eq!(
            builtin_group("Dic12")
                .unwrap()
                .normal("C6")
                .unwrap()
                .order(),
            6
        );
        assert_eq!(
            builtin_group("F20").unwrap().normal("D10").unwrap().order(),
            10
        );
    }

    #[test]
    fn rejects_unknown_names() {
        for bad in ["S8", "D7", "Dic6", "Foo", "C0", "C8:C3"] {
            assert!(builtin_group(bad).is_err(), "{bad}");
        }
    }
}
