/**
 * Reader for the averaged-report CSV published by the simulator
 * (schema "shearcascade.report.v1").
 *
 * Layout: a "# schema: ..." line, "# key = value" scalar lines, a header
 * row, then one row per horizontal-wavenumber shell.  The reader never
 * mutates the file and rejects any other schema version.
 */

export const REPORT_SCHEMA = "shearcascade.report.v1";

export class SchemaVersionError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "SchemaVersionError";
  }
}

export interface ShellRow {
  kappa: number;
  fluxMean: number;
  fluxErr: number;
  epsLowMean: number;
  epsHighMean: number;
  epsHighErr: number;
  prodHighMean: number;
  prodHighErr: number;
  eHighMean: number;
  gxyHighMean: number;
  kcal: number;
  condA: boolean;
  condB: boolean;
  admissible: boolean;
  lowerOk: boolean;
  upperOk: boolean;
  verdict: string;
}

export interface Report {
  scalars: Record<string, number>;
  shells: ShellRow[];
}

function need(columns: Map<string, number>, name: string): number {
  const idx = columns.get(name);
  if (idx === undefined) {
    throw new SchemaVersionError(`report CSV is missing column '${name}'`);
  }
  return idx;
}

export function parseReportCsv(text: string): Report {
  const lines = text.split(/\r?\n/).filter((l) => l.length > 0);
  if (lines.length === 0 || !lines[0].startsWith("# schema:")) {
    throw new SchemaVersionError(`missing schema line; expected ${REPORT_SCHEMA}`);
  }
  const found = lines[0].slice("# schema:".length).trim();
  if (found !== REPORT_SCHEMA) {
    throw new SchemaVersionError(`schema '${found}' does not match expected '${REPORT_SCHEMA}'`);
  }

  const scalars: Record<string, number> = {};
  let row = 1;
  while (row < lines.length && lines[row].startsWith("#")) {
    const body = lines[row].slice(1);
    const eq = body.indexOf("=");
    if (eq >= 0) {
      scalars[body.slice(0, eq).trim()] = Number(body.slice(eq + 1).trim());
    }
    row += 1;
  }
  if (row >= lines.length) {
    throw new SchemaVersionError("report CSV has no header row");
  }
  const columns = new Map(lines[row].split(",").map((name, i) => [name, i] as const));
  row += 1;

  const idx = {
    kappa: need(columns, "kappa"),
    fluxMean: need(columns, "flux_mean"),
    fluxErr: need(columns, "flux_err"),
    epsLowMean: need(columns, "eps_low_mean"),
    epsHighMean: need(columns, "eps_high_mean"),
    epsHighErr: need(columns, "eps_high_err"),
    prodHighMean: need(columns, "prod_high_mean"),
    prodHighErr: need(columns, "prod_high_err"),
    eHighMean: need(columns, "E_high_mean"),
    gxyHighMean: need(columns, "Gxy_high_mean"),
    kcal: need(columns, "Kcal"),
    condA: need(columns, "cond_a"),
    condB: need(columns, "cond_b"),
    admissible: need(columns, "admissible"),
    lowerOk: need(columns, "lower_ok"),
    upperOk: need(columns, "upper_ok"),
    verdict: need(columns, "verdict"),
  };

  const shells: ShellRow[] = [];
  for (; row < lines.length; row += 1) {
    const parts = lines[row].split(",");
    shells.push({
      kappa: Number(parts[idx.kappa]),
      fluxMean: Number(parts[idx.fluxMean]),
      fluxErr: Number(parts[idx.fluxErr]),
      epsLowMean: Number(parts[idx.epsLowMean]),
      epsHighMean: Number(parts[idx.epsHighMean]),
      epsHighErr: Number(parts[idx.epsHighErr]),
      prodHighMean: Number(parts[idx.prodHighMean]),
      prodHighErr: Number(parts[idx.prodHighErr]),
      eHighMean: Number(parts[idx.eHighMean]),
      gxyHighMean: Number(parts[idx.gxyHighMean]),
      kcal: Number(parts[idx.kcal]),
      condA: parts[idx.condA] === "1",
      condB: parts[idx.condB] === "1",
      admissible: parts[idx.admissible] === "1",
      lowerOk: parts[idx.lowerOk] === "1",
      upperOk: parts[idx.upperOk] === "1",
      verdict: parts[idx.verdict],
    });
  }
  if (shells.length === 0) {
    throw new SchemaVersionError("report CSV has no shell rows");
  }
  return { scalars, shells };
}
