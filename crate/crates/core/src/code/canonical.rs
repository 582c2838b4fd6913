use super::{Pass, Passage, Sign, VirtualLinkDiagram};

type Token = (usize, Passage, Sign);

#[derive(Clone)]
struct Labels {
    map: Vec<Option<usize>>,
    next: usize,
}

impl Labels {
    fn tokens(&mut self, comp: &[Pass], rotation: usize) -> Vec<Token> {
        let len = comp.len();
        (0..len)
            .map(|i| {
                let p = comp[(rotation + i) % len];
                let label = *self.map[p.crossing].get_or_insert_with(|| {
                    self.next += 1;
                    self.next - 1
                });
                (label, p.passage, p.sign)
            })
            .collect()
    }
}

fn minimize(components: &[Vec<Pass>], remaining: &[usize], labels: &Labels) -> Vec<Vec<Token>> {
    if remaining.is_empty() {
        return vec![];
    }
    let mut best: Option<Vec<Token>> = None;
    let mut ties: Vec<(usize, Labels)> = vec![];
    for (slot, &ci) in remaining.iter().enumerate() {
        for rot in 0..components[ci].len() {
            let mut l = labels.clone();
            let toks = l.tokens(&components[ci], rot);
            match &best {
                Some(b) if toks > *b => {}
                Some(b) if toks == *b => ties.push((slot, l)),
                _ => {
                    best = Some(toks);
                    ties = vec![(slot, l)];
                }
            }
        }
    }
    let head = best.expect("remaining is non-empty");
    let mut result: Option<Vec<Vec<Token>>> = None;
    for (slot, l) in ties {
        let mut rest: Vec<usize> = remaining.to_vec();
        rest.remove(slot);
        let mut tail = minimize(components, &rest, &l);
        tail.insert(0, head.clone());
        if result.as_ref().is_none_or(|r| tail < *r) {
            result = Some(tail);
        }
    }
    result.unwrap()
}

impl VirtualLinkDiagram {
    /// Canonical representative: the lexicographically least code over all
    /// rotations and orderings of the components, with labels renumbered in
    /// first-appearance order.
    pub fn canonical(&self) -> VirtualLinkDiagram {
        let labels = Labels { map: vec![None; self.crossing_count()], next: 0 };
        let all: Vec<usize> = (0..self.components().len()).collect();
        let comps = minimize(self.components(), &all, &labels)
            .into_iter()
            .map(|c| c.into_iter().map(|(l, p, s)| Pass::new(l, p, s)).collect())
            .collect();
        VirtualLinkDiagram::from_parts(comps, self.free_loops())
    }

    pub fn canonical_string(&self) -> String {
        self.canonical().serialize()
    }

    pub fn canonically_equal(&self, other: &VirtualLinkDiagram) -> bool {
        self.crossing_count() == other.crossing_count()
            && self.free_loops() == other.free_loops()
            && self.canonical() == other.canonical()
    }
}
