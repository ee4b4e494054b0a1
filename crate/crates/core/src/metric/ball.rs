//! Weighted Cayley balls by Dijkstra over a bucket queue.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::automorphism::{Element, Portrait, PortraitKey, Word};
use crate::error::{Error, Result};
use crate::groups::{GeneratingSet, KEY_DEPTH};

/// Node identifier inside a [`Ball`]; ids grow with length.
pub type NodeId = u32;

/// Generator index inside the ball's generating set.
pub type GenIndex = u16;

#[derive(Clone, Debug)]
pub struct BallOptions {
    /// Maximal number of elements before enumeration fails.
    pub max_elements: usize,
    /// Maximal number of geodesic words reconstructed per element.
    pub geodesic_cap: usize,
}

impl Default for BallOptions {
    fn default() -> Self {
        BallOptions {
            max_elements: 40_000_000,
            geodesic_cap: 1_000_000,
        }
    }
}

/// One element of the ball with its length and all geodesic predecessors.
#[derive(Clone, Debug)]
pub struct Node {
    /// A geodesic word over the generating set.
    pub word: Vec<GenIndex>,
    /// The same word expanded into table letters.
    pub letters: Word,
    pub length: u32,
    /// Every `(u, g)` with `u·g` this element and `L(u) + w(g) = L(self)`.
    pub preds: Vec<(NodeId, GenIndex)>,
    pub portrait: Portrait,
}

/// All elements of weighted length at most `radius`.
#[derive(Clone, Debug)]
pub struct Ball {
    set: GeneratingSet,
    options: BallOptions,
    gen_portraits: Vec<Portrait>,
    nodes: Vec<Node>,
    index: HashMap<PortraitKey, Vec<NodeId>>,
    pending: BTreeMap<u32, Vec<(NodeId, GenIndex)>>,
    radius: u32,
}

struct Candidate {
    parent: NodeId,
    gen: GenIndex,
    letters: Word,
    portrait: Portrait,
    key: PortraitKey,
}

/// Enumerates the ball of the given radius.
pub fn enumerate_ball(set: &GeneratingSet, radius: u32, options: BallOptions) -> Result<Ball> {
    let mut ball = Ball::new(set, options);
    ball.extend_to(radius)?;
    Ok(ball)
}

impl Ball {
    /// The ball of radius 0.
    pub fn new(set: &GeneratingSet, options: BallOptions) -> Ball {
        let table = set.table();
        let gen_portraits = set
            .generators()
            .iter()
            .map(|g| table.portrait_of(&g.word, KEY_DEPTH))
            .collect();
        let identity = Portrait::identity(KEY_DEPTH);
        let mut index = HashMap::new();
        index.insert(identity.key(), vec![0]);
        let mut ball = Ball {
            set: set.clone(),
            options,
            gen_portraits,
            nodes: vec![Node {
                word: Vec::new(),
                letters: Word::empty(),
                length: 0,
                preds: Vec::new(),
                portrait: identity,
            }],
            index,
            pending: BTreeMap::new(),
            radius: 0,
        };
        ball.schedule(0..1);
        ball
    }

    pub fn generating_set(&self) -> &GeneratingSet {
        &self.set
    }

    pub fn options(&self) -> &BallOptions {
        &self.options
    }

    /// Radius up to which the ball is complete.
    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id as usize]
    }

    pub fn element(&self, id: NodeId) -> Element {
        Element::from_word(self.set.table(), self.nodes[id as usize].letters.clone())
            .expect("ball letters belong to the table")
    }

    /// Ids of the elements of length at most `r` (a prefix of all ids).
    pub fn ids_within(&self, r: u32) -> std::ops::Range<NodeId> {
        assert!(r <= self.radius, "radius {r} beyond the enumerated {}", self.radius);
        let end = self.nodes.partition_point(|n| n.length <= r);
        0..end as NodeId
    }

    /// `γ(r)`, the number of elements of length at most `r`.
    pub fn gamma(&self, r: u32) -> u64 {
        self.ids_within(r).len() as u64
    }

    fn schedule(&mut self, ids: std::ops::Range<usize>) {
        for id in ids {
            let length = self.nodes[id].length;
            for (g, gen) in self.set.generators().iter().enumerate() {
                self.pending
                    .entry(length + gen.weight)
                    .or_default()
                    .push((id as NodeId, g as GenIndex));
            }
        }
    }

    fn equal_letters(&self, u: &Word, v: &Word) -> Result<bool> {
        self.set.table().words_equal(u, v)
    }

    fn find_in_index(&self, key: &PortraitKey, letters: &Word) -> Result<Option<NodeId>> {
        if let Some(bucket) = self.index.get(key) {
            for &id in bucket {
                if self.equal_letters(&self.nodes[id as usize].letters, letters)? {
                    return Ok(Some(id));
                }
            }
        }
        Ok(None)
    }

    /// Extends the enumeration until every element of length `≤ radius` is known.
    ///
    /// On a budget error the ball stays complete up to the last finished radius
    /// and can be extended again with a larger budget.
    pub fn extend_to(&mut self, radius: u32) -> Result<()> {
        while let Some((&length, _)) = self.pending.first_key_value() {
            if length > radius {
                break;
            }
            self.finish_shell(length)?;
        }
        self.radius = self.radius.max(radius);
        Ok(())
    }

    fn finish_shell(&mut self, length: u32) -> Result<()> {
        let mut requests = self.pending.remove(&length).unwrap_or_default();
        requests.sort_unstable();
        requests.dedup();
        let table = self.set.table();

        let candidates: Vec<Candidate> = requests
            .par_iter()
            .map(|&(parent, gen)| {
                let node = &self.nodes[parent as usize];
                let portrait = node.portrait.compose(&self.gen_portraits[gen as usize]);
                Candidate {
                    parent,
                    gen,
                    letters: node.letters.concat(&self.set.get(gen as usize).word),
                    key: portrait.key(),
                    portrait,
                }
            })
            .collect();

        // Candidates equal to an element of a shorter shell are not geodesic.
        let known: Vec<bool> = candidates
            .par_iter()
            .map(|c| Ok(self.find_in_index(&c.key, &c.letters)?.is_some()))
            .collect::<Result<_>>()?;

        let mut groups: HashMap<&PortraitKey, Vec<usize>> = HashMap::new();
        let mut group_order = Vec::new();
        for (i, c) in candidates.iter().enumerate() {
            if known[i] {
                continue;
            }
            let entry = groups.entry(&c.key).or_default();
            if entry.is_empty() {
                group_order.push(&c.key);
            }
            entry.push(i);
        }

        // Within a key group, cluster candidates into distinct elements.
        let clusters: Vec<Vec<Vec<usize>>> = group_order
            .par_iter()
            .map(|key| {
                let members = &groups[key];
                let mut clusters: Vec<Vec<usize>> = Vec::new();
                'next: for &i in members {
                    for cluster in clusters.iter_mut() {
                        let rep = &candidates[cluster[0]].letters;
                        if table.words_equal(rep, &candidates[i].letters)? {
                            cluster.push(i);
                            continue 'next;
                        }
                    }
                    clusters.push(vec![i]);
                }
                Ok(clusters)
            })
            .collect::<Result<_>>()?;

        let mut fresh: Vec<Vec<usize>> = clusters.into_iter().flatten().collect();
        fresh.sort_unstable_by_key(|cluster| cluster[0]);

        if self.nodes.len() + fresh.len() > self.options.max_elements {
            // Leave the shell pending so a later call can retry it.
            self.pending.insert(length, requests);
            self.radius = length - 1;
            return Err(Error::BallBudget {
                limit: self.options.max_elements,
                last_complete_radius: self.radius,
            });
        }

        let start = self.nodes.len();
        let mut candidates: Vec<Option<Candidate>> = candidates.into_iter().map(Some).collect();
        for cluster in fresh {
            let preds: Vec<(NodeId, GenIndex)> = cluster
                .iter()
                .map(|&i| {
                    let c = candidates[i].as_ref().expect("candidate used once");
                    (c.parent, c.gen)
                })
                .collect();
            let rep = candidates[cluster[0]].take().expect("candidate used once");
            let mut word = self.nodes[rep.parent as usize].word.clone();
            word.push(rep.gen);
            let id = self.nodes.len() as NodeId;
            self.index.entry(rep.key).or_default().push(id);
            self.nodes.push(Node {
                word,
                letters: rep.letters,
                length,
                preds,
                portrait: rep.portrait,
            });
        }
        let end = self.nodes.len();
        self.schedule(start..end);
        self.radius = self.radius.max(length);
        Ok(())
    }

    /// Finds an element among the enumerated ones.
    pub fn lookup(&self, element: &Element) -> Result<Option<NodeId>> {
        let letters = self.set.table().reduce(element.letters());
        let key = self.set.table().portrait_of(&letters, KEY_DEPTH).key();
        self.find_in_index(&key, &letters)
    }

    /// Weighted length of an element, extending the ball if needed.
    ///
    /// The element's own word, read letter by letter, bounds the search.
    pub fn length_of(&mut self, element: &Element) -> Result<u32> {
        if let Some(id) = self.lookup(element)? {
            return Ok(self.nodes[id as usize].length);
        }
        let bound = self.upper_bound(element)?;
        self.extend_to(bound)?;
        match self.lookup(element)? {
            Some(id) => Ok(self.nodes[id as usize].length),
            None => Err(Error::NotInBall { radius: bound }),
        }
    }

    /// Weighted length of the element's reduced letter word, an upper bound
    /// for its group length.
    pub fn upper_bound(&self, element: &Element) -> Result<u32> {
        let reduced = self.set.table().reduce(element.letters());
        self.set.letter_word_weight(&reduced).ok_or_else(|| {
            Error::InvalidParameter(
                "element contains a letter that is not itself a generator".into(),
            )
        })
    }

    /// Lengths of many elements; extends the ball once for all misses.
    pub fn lengths_of(&mut self, elements: &[Element]) -> Result<Vec<u32>> {
        let first: Vec<Option<NodeId>> = elements
            .par_iter()
            .map(|e| self.lookup(e))
            .collect::<Result<_>>()?;
        let mut bound = 0;
        for (e, hit) in elements.iter().zip(&first) {
            if hit.is_none() {
                bound = bound.max(self.upper_bound(e)?);
            }
        }
        if bound > self.radius {
            self.extend_to(bound)?;
        }
        elements
            .par_iter()
            .zip(first.par_iter())
            .map(|(e, hit)| {
                let id = match hit {
                    Some(id) => *id,
                    None => self
                        .lookup(e)?
                        .ok_or(Error::NotInBall { radius: self.radius })?,
                };
                Ok(self.nodes[id as usize].length)
            })
            .collect()
    }
}
