use super::poly::SparsePoly;
use crate::error::{Error, Result};

fn overflow(what: &'static str) -> Error {
    Error::Overflow(what)
}

/// Binomial coefficient with `C(m, 0) = 1` for every `m`, and zero when
/// `k < 0`, `k > m >= 0`, or `m < 0 < k`.
pub fn binom(m: i64, k: i64) -> Result<i64> {
    if k < 0 {
        return Ok(0);
    }
    if k == 0 {
        return Ok(1);
    }
    if m < 0 || k > m {
        return Ok(0);
    }
    let k = k.min(m - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (m - i) as i128 / (i + 1) as i128;
        if acc > i64::MAX as i128 {
            return Err(overflow("binomial coefficient"));
        }
    }
    Ok(acc as i64)
}

/// Fibonacci numbers with `F_0 = F_1 = 1`, extended by `F_{-1} = 0`, `F_{-2} = 1`
/// and zero below `-2`.
pub fn fib_ext(n: i64) -> Result<i64> {
    match n {
        i64::MIN..=-3 => Ok(0),
        -2 => Ok(1),
        -1 => Ok(0),
        _ => {
            let (mut a, mut b) = (0i64, 1i64);
            for _ in 0..n {
                let c = a.checked_add(b).ok_or_else(|| overflow("Fibonacci number"))?;
                a = b;
                b = c;
            }
            Ok(b)
        }
    }
}

/// Pell numbers, `P_0 = 0`, `P_1 = 1`, `P_n = 2 P_{n-1} + P_{n-2}`.
pub fn pell(n: u32) -> Result<i64> {
    let (mut a, mut b) = (0i64, 1i64);
    for _ in 0..n {
        let c = b
            .checked_mul(2)
            .and_then(|x| x.checked_add(a))
            .ok_or_else(|| overflow("Pell number"))?;
        a = b;
        b = c;
    }
    Ok(a)
}

pub fn catalan(n: u32) -> Result<i64> {
    let n = n as i64;
    let central = binom(2 * n, n)?;
    Ok(central / (n + 1))
}

/// Coefficients of `t^0..=t^order` in `1 + sum_{m>=1} prod_{j=1}^{m} (1 - (1-t)^j)`.
///
/// Each product has valuation `m`, so terms with `m > order` are dropped.
pub fn fishburn_series(order: usize) -> Result<Vec<i64>> {
    let err = || overflow("Fishburn series");
    let len = order + 1;
    let mul = |a: &[i128], b: &[i128]| -> Result<Vec<i128>> {
        let mut out = vec![0i128; len];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate().take(len - i) {
                let v = x.checked_mul(y).ok_or_else(err)?;
                out[i + j] = out[i + j].checked_add(v).ok_or_else(err)?;
            }
        }
        Ok(out)
    };
    let mut one_minus_t = vec![0i128; len];
    one_minus_t[0] = 1;
    if order >= 1 {
        one_minus_t[1] = -1;
    }
    let mut total = vec![0i128; len];
    total[0] = 1;
    let mut power = vec![0i128; len];
    power[0] = 1;
    let mut product = power.clone();
    for _m in 1..=order {
        power = mul(&power, &one_minus_t)?;
        let mut factor: Vec<i128> = power.iter().map(|c| -c).collect();
        factor[0] += 1;
        product = mul(&product, &factor)?;
        for (acc, c) in total.iter_mut().zip(&product) {
            *acc = acc.checked_add(*c).ok_or_else(err)?;
        }
    }
    total
        .into_iter()
        .map(|c| i64::try_from(c).map_err(|_| err()))
        .collect()
}

/// The Gaussian binomial coefficient in `q`, via its product formula and exact division.
pub fn qbinom(m: u32, k: u32) -> Result<SparsePoly> {
    if k > m {
        return Ok(SparsePoly::zero());
    }
    let one = SparsePoly::one();
    let factor = |e: u32| one.checked_sub(&SparsePoly::monomial(1, [e, 0, 0]));
    let mut num = SparsePoly::one();
    let mut den = SparsePoly::one();
    for i in 1..=k {
        num = num.checked_mul(&factor(m - k + i)?)?;
        den = den.checked_mul(&factor(i)?)?;
    }
    num.div_exact(&den)
}

/// Coefficients through `x^order` of `1 / (1 - G(x))` for `G` with zero constant term.
pub fn invert_transform(g: &[i64], order: usize) -> Result<Vec<i64>> {
    if g.first().is_some_and(|&c| c != 0) {
        return Err(Error::InvalidArgument(
            "transform input must have zero constant term".into(),
        ));
    }
    let gk = |k: usize| g.get(k).copied().unwrap_or(0);
    let mut f = vec![1i64];
    for n in 1..=order {
        let mut acc = 0i64;
        for k in 1..=n {
            let term = gk(k)
                .checked_mul(f[n - k])
                .ok_or_else(|| overflow("transform"))?;
            acc = acc.checked_add(term).ok_or_else(|| overflow("transform"))?;
        }
        f.push(acc);
    }
    Ok(f)
}

/// Coefficients through `x^order` of `1 - 1/F(x)` for `F` with constant term 1.
pub fn invert_inverse(f: &[i64], order: usize) -> Result<Vec<i64>> {
    if f.first() != Some(&1) {
        return Err(Error::InvalidArgument(
            "inverse transform needs constant term 1".into(),
        ));
    }
    let fk = |k: usize| f.get(k).copied().unwrap_or(0);
    let mut g = vec![0i64];
    for n in 1..=order {
        let mut acc = fk(n);
        for k in 1..n {
            let term = g[k]
                .checked_mul(fk(n - k))
                .ok_or_else(|| overflow("transform"))?;
            acc = acc.checked_sub(term).ok_or_else(|| overflow("transform"))?;
        }
        g.push(acc);
    }
    Ok(g)
}
