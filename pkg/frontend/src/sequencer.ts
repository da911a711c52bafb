// monotone request sequencing: a response is rendered only if no newer
// request was issued meanwhile, so a slow early reply can never
// overwrite the view for newer inputs
export type Fetcher = (url: string) => Promise<unknown>;

export interface SequencedResult<T> {
  stale: boolean;
  value?: T;
  error?: string;
}

export class RequestSequencer {
  private seq = 0;

  constructor(private fetcher: Fetcher) {}

  async request<T>(url: string): Promise<SequencedResult<T>> {
    const mine = ++this.seq;
    try {
      const value = (await this.fetcher(url)) as T;
      if (mine !== this.seq) return { stale: true };
      return { stale: false, value };
    } catch (err) {
      if (mine !== this.seq) return { stale: true };
      return { stale: false, error: err instanceof Error ? err.message : String(err) };
    }
  }
}
