/**
 * Live-request scheduling for the angle slider: every change is
 * debounced (at least 100 ms), at most one request is ever in flight,
 * and responses carry monotone sequence numbers so only the outcome of
 * the newest request is ever delivered to the renderer.
 */

export interface Clock {
  setTimeout(fn: () => void, ms: number): number;
  clearTimeout(id: number): void;
}

const realClock: Clock = {
  setTimeout: (fn, ms) => setTimeout(fn, ms) as unknown as number,
  clearTimeout: (id) => clearTimeout(id),
};

export interface Outcome<R> {
  seq: number;
  result?: R;
  error?: unknown;
}

interface Envelope<A> {
  args: A;
  seq: number;
}

export class LiveScheduler<A, R> {
  private seq = 0;
  private deliveredSeq = 0;
  private timer: number | null = null;
  private debouncing: Envelope<A> | null = null;
  private queued: Envelope<A> | null = null;
  private inFlight = false;

  constructor(
    private readonly send: (args: A, seq: number) => Promise<R>,
    private readonly deliver: (outcome: Outcome<R>) => void,
    private readonly debounceMs = 100,
    private readonly clock: Clock = realClock,
  ) {
    if (debounceMs < 100) {
      throw new Error("live requests must be debounced by at least 100 ms");
    }
  }

  /** Sequence number of the newest request (0 before any). */
  get lastIssued(): number {
    return this.seq;
  }

  /** Sequence number of the last outcome handed to the renderer. */
  get lastDelivered(): number {
    return this.deliveredSeq;
  }

  /** Register a change; returns the sequence number it was assigned. */
  request(args: A): number {
    const seq = ++this.seq;
    this.debouncing = { args, seq };
    if (this.timer !== null) this.clock.clearTimeout(this.timer);
    this.timer = this.clock.setTimeout(() => this.fire(), this.debounceMs);
    return seq;
  }

  private fire(): void {
    this.timer = null;
    if (!this.debouncing) return;
    const next = this.debouncing;
    this.debouncing = null;
    if (this.inFlight) {
      // hold only the newest; anything older is already obsolete
      this.queued = next;
      return;
    }
    this.dispatch(next);
  }

  private dispatch(env: Envelope<A>): void {
    this.inFlight = true;
    this.send(env.args, env.seq).then(
      (result) => this.settle({ seq: env.seq, result }),
      (error) => this.settle({ seq: env.seq, error }),
    );
  }

  private settle(outcome: Outcome<R>): void {
    this.inFlight = false;
    // deliver only the newest request's outcome; stale responses vanish
    if (outcome.seq === this.seq && outcome.seq > this.deliveredSeq) {
      this.deliveredSeq = outcome.seq;
      this.deliver(outcome);
    }
    if (this.queued) {
      const next = this.queued;
      this.queued = null;
      this.dispatch(next);
    }
  }
}
