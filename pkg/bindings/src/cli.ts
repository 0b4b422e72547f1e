/**
 * Low-level subprocess runner for the countstream CLI.
 *
 * The engine is reached exclusively through its command-line interface:
 * we spawn `python3 -m countstream <subcommand> ...`, read JSONL from
 * stdout, and surface structured failures (the CLI prints a JSON error
 * line to stderr and exits non-zero).
 */

import { execFile } from "node:child_process";

import type { ErrorLine, JsonlLine } from "./types.js";

export interface RunnerOptions {
  /**
   * Python interpreter to launch.  Falls back to the COUNTSTREAM_PYTHON
   * environment variable, then "python3".  The interpreter must have the
   * countstream package installed.
   */
  pythonBin?: string;
  /** Working directory for the subprocess. */
  cwd?: string;
  /** Kill the subprocess after this many milliseconds. */
  timeoutMs?: number;
}

/** Raised when the CLI exits non-zero or emits unparseable output. */
export class CountstreamCliError extends Error {
  readonly exitCode: number | null;
  readonly stderr: string;

  constructor(message: string, exitCode: number | null, stderr: string) {
    super(message);
    this.name = "CountstreamCliError";
    this.exitCode = exitCode;
    this.stderr = stderr;
  }
}

function parseLines(text: string, source: string): JsonlLine[] {
  const lines: JsonlLine[] = [];
  for (const raw of text.split("\n")) {
    const line = raw.trim();
    if (line === "") continue;
    try {
      lines.push(JSON.parse(line) as JsonlLine);
    } catch {
      throw new CountstreamCliError(
        `unparseable ${source} line from countstream: ${line}`,
        null,
        text,
      );
    }
  }
  return lines;
}

/**
 * Run one countstream subcommand and return its parsed JSONL lines.
 *
 * On non-zero exit the CLI's own JSON error message (if any) becomes the
 * thrown error's message, so callers see e.g. "association-rule mining
 * needs a binary database ..." rather than a generic exit-code note.
 */
export function runCountstream(
  args: string[],
  options: RunnerOptions = {},
): Promise<JsonlLine[]> {
  const python =
    options.pythonBin ?? process.env.COUNTSTREAM_PYTHON ?? "python3";
  return new Promise((resolve, reject) => {
    execFile(
      python,
      ["-m", "countstream", ...args],
      {
        cwd: options.cwd,
        timeout: options.timeoutMs,
        maxBuffer: 256 * 1024 * 1024,
      },
      (err, stdout, stderr) => {
        if (err) {
          const code =
            typeof (err as NodeJS.ErrnoException & { code?: unknown }).code ===
            "number"
              ? ((err as unknown as { code: number }).code as number)
              : null;
          let message = `countstream exited with code ${code ?? "?"}`;
          for (const raw of stderr.trim().split("\n").reverse()) {
            try {
              const parsed = JSON.parse(raw) as ErrorLine;
              if (parsed.type === "error") {
                message = parsed.message;
                break;
              }
            } catch {
              // argparse usage errors are plain text; keep scanning
            }
          }
          if (message.startsWith("countstream exited") && stderr.trim()) {
            message = `${message}: ${stderr.trim().split("\n").pop()}`;
          }
          reject(new CountstreamCliError(message, code, stderr));
          return;
        }
        try {
          resolve(parseLines(stdout, "stdout"));
        } catch (parseErr) {
          reject(parseErr);
        }
      },
    );
  });
}

/** Pick out all lines of one `type` with a narrowed static type. */
export function linesOf<T extends JsonlLine["type"]>(
  lines: JsonlLine[],
  type: T,
): Array<Extract<JsonlLine, { type: T }>> {
  return lines.filter(
    (line): line is Extract<JsonlLine, { type: T }> => line.type === type,
  );
}
