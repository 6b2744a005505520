use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

pub const DEFAULT_PRECISION: u32 = 16;

#[derive(Parser, Debug, Clone, Serialize)]
#[command(name = "btlab", version, about = "Exact computations on the Bruhat-Tits building, special Cartier modules and slope bundles")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct Global {
    /// Residue characteristic.
    #[arg(long, global = true, default_value_t = 3)]
    pub p: u64,
    /// Rank.
    #[arg(long, global = true, default_value_t = 2)]
    pub d: usize,
    /// Size of the base field for dlcount (a prime power).
    #[arg(long, global = true)]
    pub q: Option<u64>,
    /// Residue degree of the Witt ring, or the extension degree for dlcount.
    #[arg(long, global = true, default_value_t = 1)]
    pub m: u32,
    /// Witt vector length N (computations mod p^N).
    #[arg(long, global = true, env = "BTLAB_PRECISION", default_value_t = DEFAULT_PRECISION)]
    pub precision: u32,
    #[arg(long, global = true, default_value_t = 1)]
    pub radius: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Table,
    Dot,
}

#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(rename_all = "lowercase", tag = "name")]
pub enum Command {
    /// Vertices within graph distance --radius of a lattice.
    Ball(BallArgs),
    /// Distance between two lattices.
    Dist(DistArgs),
    /// Canonical form, lattice chain and barycentric weights of a diagonal norm.
    Diagnorm(DiagnormArgs),
    /// Specialize a point [t_0 : ... : t_{d-1}] with coordinates in a finite extension of Q_p.
    Specialize(SpecializeArgs),
    /// Newton slopes of an F-isocrystal.
    Slopes(SlopesArgs),
    /// Degree d modifications of rank d^2 bundles obtained from degree 1 modifications of O^d.
    Modifications(ModificationsArgs),
    /// Banach-Colmez Dimensions of bundle cohomology.
    Bcdim(BcdimArgs),
    /// Points of P^{d-1}(F_{q^m}) off every F_q-rational hyperplane.
    Dlcount(DlcountArgs),
    /// Special Cartier modules.
    Cartier(CartierArgs),
    /// Local model equations in (P^{d-1})^d.
    Localmodel(LocalmodelArgs),
    /// Semistable chart of a simplex.
    Chart(ChartArgs),
    /// Run a JSON list of argument vectors and emit a list of documents.
    Batch(BatchArgs),
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct BallArgs {
    /// Center lattice as basis rows "a,b;c,d" (columns are the basis); default the standard lattice.
    #[arg(long)]
    pub center: Option<String>,
    /// Also emit the dual complex of special fiber components.
    #[arg(long)]
    pub incidence: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DistMode {
    Brv,
    Homothety,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct DistArgs {
    #[arg(long)]
    pub a: String,
    #[arg(long)]
    pub b: String,
    #[arg(long, value_enum, default_value_t = DistMode::Brv)]
    pub mode: DistMode,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct DiagnormArgs {
    /// Exponents c_i, e.g. "0,1/2".
    #[arg(long)]
    pub c: String,
    /// Basis e_i as the columns of these rows; default the standard basis.
    #[arg(long)]
    pub basis: Option<String>,
    /// A second norm, compared with the first by both distance routes.
    #[arg(long)]
    pub other_c: Option<String>,
    #[arg(long)]
    pub other_basis: Option<String>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct SpecializeArgs {
    /// "Q", "eisenstein:e" (y^e = p) or "unramified:f".
    #[arg(long, default_value = "Q")]
    pub field: String,
    /// Coordinates separated by ';', each a polynomial in y, e.g. "1; 2 + y/3".
    #[arg(long)]
    pub point: String,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct SlopesArgs {
    /// Integer matrix A of F = p^{-shift} A sigma, rows separated by ';'.
    #[arg(long, conflicts_with = "module")]
    pub matrix: Option<String>,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub shift: i64,
    /// Use the total F of a Cartier module instead.
    #[arg(long, value_enum)]
    pub module: Option<ModuleKind>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct ModificationsArgs {
    /// Include the multiplicity notes, the dictionary and the enumeration cross-checks.
    #[arg(long)]
    pub report: bool,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct BcdimArgs {
    /// Bundle such as "O(1/2)^2 + O + O(-1/3)".
    #[arg(long, conflicts_with = "twin")]
    pub bundle: Option<String>,
    /// Solve the Ext sequence obtained from 0 -> O -> O(1) -> C -> 0 against O(1/d).
    #[arg(long)]
    pub twin: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DlMethodArg {
    Brute,
    Formula,
    Both,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct DlcountArgs {
    #[arg(long, value_enum, default_value_t = DlMethodArg::Formula)]
    pub method: DlMethodArg,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModuleKind {
    Reference,
    Noncritical,
    Random,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct CartierArgs {
    #[command(subcommand)]
    pub action: CartierAction,
    #[arg(long, value_enum, default_value_t = ModuleKind::Reference, global = true)]
    pub module: ModuleKind,
}

#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CartierAction {
    /// Verify the axioms and report height and critical indices.
    Check,
    /// Critical indices only.
    Critical,
    /// Generators of the fixed lattice of V^{-1} Pi on M_i.
    Eta {
        #[arg(long, default_value_t = 0)]
        index: usize,
    },
    /// Lattice chain of the framed module.
    Simplex {
        /// Rational outer change of framing g, rows separated by ';'.
        #[arg(long)]
        outer: Option<String>,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FormArg {
    Main,
    Shifted,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct LocalmodelArgs {
    #[arg(long, value_enum, default_value_t = FormArg::Shifted)]
    pub form: FormArg,
    /// Compare zero sets of the flagged subset and all equations over F_q for this prime q.
    #[arg(long)]
    pub check_q: Option<u64>,
    /// Value of the uniformizer in F_q for --check-q.
    #[arg(long, default_value_t = 0)]
    pub varpi: u64,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct ChartArgs {
    /// Indices j of the reference lattices eta_j forming the simplex, e.g. "0,1".
    #[arg(long, conflicts_with = "simplex")]
    pub face: Option<String>,
    /// Lattices separated by '|', each as basis rows.
    #[arg(long)]
    pub simplex: Option<String>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct BatchArgs {
    /// A file holding a JSON array of argument arrays, or the JSON itself.
    #[arg(long)]
    pub input: String,
}
