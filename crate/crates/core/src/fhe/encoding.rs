use std::io::Read;
use std::path::Path;

use super::FheError;

/// Representative of `x` in `[0, n)`.
pub fn to_residue(x: i128, n: u64) -> u64 {
    x.rem_euclid(n as i128) as u64
}

/// Representative of `r` in `(-n/2, n/2]`.
pub fn centered_lift(r: u64, n: u64) -> i128 {
    let r = (r % n) as i128;
    if 2 * r > n as i128 {
        r - n as i128
    } else {
        r
    }
}

/// Maps integers into `Z_N`. `growth` bounds how much the intended circuit
/// can enlarge the largest absolute input (e.g. the row count for a sum);
/// the centered lift of any result is exact only if `2 · max|x| · growth < N`.
pub fn encode_db(values: &[i64], modulus: u64, growth: u64) -> Result<Vec<u64>, FheError> {
    if modulus < 2 {
        return Err(FheError::InvalidParameter("modulus must be at least 2".into()));
    }
    let bound = values.iter().map(|v| v.unsigned_abs() as u128).max().unwrap_or(0);
    let needed = 2 * bound * growth.max(1) as u128;
    if needed >= modulus as u128 {
        let value = values.iter().copied().max_by_key(|v| v.unsigned_abs()).unwrap_or(0);
        return Err(FheError::OverflowRisk {
            value: value as i128,
            needed,
            modulus,
        });
    }
    Ok(values.iter().map(|&v| to_residue(v as i128, modulus)).collect())
}

pub fn decode_db(residues: &[u64], modulus: u64) -> Vec<i128> {
    residues.iter().map(|&r| centered_lift(r, modulus)).collect()
}

/// Integer column `column` of a CSV file whose first row holds headers.
pub fn read_csv_column(path: &Path, column: &str) -> Result<Vec<i64>, FheError> {
    let file = std::fs::File::open(path).map_err(|e| FheError::Io(format!("{}: {e}", path.display())))?;
    read_csv_column_from(file, column)
}

pub fn read_csv_column_from<R: Read>(reader: R, column: &str) -> Result<Vec<i64>, FheError> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let err = |row: usize, msg: String| FheError::Csv {
        row,
        column: column.to_string(),
        msg,
    };
    let headers = rdr.headers().map_err(|e| err(1, e.to_string()))?.clone();
    let idx = headers
        .iter()
        .position(|h| h == column)
        .ok_or_else(|| err(1, format!("no such column; headers are {:?}", headers.iter().collect::<Vec<_>>())))?;
    let mut out = Vec::new();
    for (i, record) in rdr.records().enumerate() {
        // header is row 1
        let row = i + 2;
        let record = record.map_err(|e| err(row, e.to_string()))?;
        let cell = record.get(idx).ok_or_else(|| err(row, "missing cell".into()))?;
        let v = cell
            .parse::<i64>()
            .map_err(|_| err(row, format!("not an integer: {cell:?}")))?;
        out.push(v);
    }
    Ok(out)
}
