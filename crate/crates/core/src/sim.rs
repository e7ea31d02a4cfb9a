//! Deterministic discrete-event simulation of a closed path.
//!
//! Every user injects packets into the first server of a shared path and
//! keeps `round(window)` of them in flight. A packet visits each stage in
//! order: queueing servers are FIFO with one packet in service at a time,
//! fixed-delay stages hold every packet for exactly their service time.
//! When a packet leaves the last stage its source learns about it at once
//! (acks cost nothing and take no time), the slot is refilled, and if the
//! packet was the timed one of its round trip the controller gets a new
//! `(W_out, D)` sample.
//!
//! Events are ordered by `(time, seq)` where `seq` increases with every
//! scheduling call, so same-time events run in the order they were created
//! and two runs of one scenario are identical.

use std::cmp::{Ordering, Reverse};
use std::collections::{BinaryHeap, HashMap, VecDeque};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::analytic::{self, ServerKind, ServerSpec};
use crate::controller::{Controller, Decision, Direction, Stamp};
use crate::scenarios::{RunLength, Scenario, TraceOptions};
use crate::time::{self, Time};
use crate::{Error, Result};

/// Service-time change applied at `time` to server `server_index`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReconfigureEvent {
    pub time: Time,
    pub server_index: usize,
    pub new_service_time: Time,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EventKind {
    SourceSend { user: usize },
    ServiceComplete { server: usize },
    FixedDelayExpire { packet: u64, stage: usize },
    AckDeliver { packet: u64 },
    Reconfigure { index: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Event {
    pub time: Time,
    pub seq: u64,
    pub kind: EventKind,
}

impl Ord for Event {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.time, self.seq).cmp(&(other.time, other.seq))
    }
}

impl PartialOrd for Event {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Packet {
    pub id: u64,
    pub user: usize,
    pub send_time: Time,
    pub stamp: Option<Stamp>,
}

#[derive(Debug, Clone)]
pub struct ServerState {
    spec: ServerSpec,
    queue: VecDeque<u64>,
    in_service: Option<u64>,
    busy_until: Time,
}

impl ServerState {
    pub fn spec(&self) -> &ServerSpec {
        &self.spec
    }

    pub fn queue_len(&self) -> usize {
        self.queue.len()
    }

    pub fn is_busy(&self) -> bool {
        self.in_service.is_some()
    }

    pub fn busy_until(&self) -> Time {
        self.busy_until
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RecordKind {
    Send,
    Ack,
    Decision,
}

/// One observation. Times and delays are exact in the simulation and
/// converted to `f64` here.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub time: f64,
    pub user_id: usize,
    pub event_kind: RecordKind,
    pub window_real: f64,
    pub window_int: u32,
    pub rtt: Option<f64>,
    pub rule_statistic: Option<f64>,
    pub direction: Option<Direction>,
}

/// Exact round-trip delay of one acknowledged packet.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RttSample {
    pub user: usize,
    pub ack_time: Time,
    pub rtt: Time,
    pub timed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trace {
    pub scenario: String,
    pub users: usize,
    /// Knee capacity of the path at the start of the run.
    pub knee: f64,
    pub records: Vec<TraceRecord>,
    pub rtts: Vec<RttSample>,
    pub end_time: Time,
    pub packets_sent: u64,
    pub packets_acked: u64,
}

impl Trace {
    pub fn decisions(&self, user: usize) -> impl Iterator<Item = &TraceRecord> {
        self.records
            .iter()
            .filter(move |r| r.user_id == user && r.event_kind == RecordKind::Decision)
    }
}

struct User {
    controller: Controller,
    in_flight: u32,
}

pub struct Simulation {
    now: Time,
    seq: u64,
    events: BinaryHeap<Reverse<Event>>,
    servers: Vec<ServerState>,
    users: Vec<User>,
    packets: HashMap<u64, Packet>,
    next_packet: u64,
    reconfigurations: Vec<ReconfigureEvent>,
    run_length: RunLength,
    options: TraceOptions,
    trace: Trace,
}

impl Simulation {
    pub fn new(scenario: &Scenario) -> Result<Self> {
        scenario.validate()?;
        let users = scenario
            .users
            .iter()
            .map(|u| {
                Ok(User {
                    controller: Controller::new(u.params.clone(), u.initial_window)?,
                    in_flight: 0,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let servers = scenario
            .path
            .servers()
            .iter()
            .map(|spec| ServerState {
                spec: spec.clone(),
                queue: VecDeque::new(),
                in_service: None,
                busy_until: Time::zero(),
            })
            .collect();
        let mut sim = Simulation {
            now: Time::zero(),
            seq: 0,
            events: BinaryHeap::new(),
            servers,
            users,
            packets: HashMap::new(),
            next_packet: 0,
            reconfigurations: scenario.reconfigurations.clone(),
            run_length: scenario.run_length,
            options: scenario.trace,
            trace: Trace {
                scenario: scenario.name.clone(),
                users: scenario.users.len(),
                knee: time::to_f64(analytic::knee_capacity(&scenario.path)),
                records: Vec::new(),
                rtts: Vec::new(),
                end_time: Time::zero(),
                packets_sent: 0,
                packets_acked: 0,
            },
        };
        for index in 0..sim.reconfigurations.len() {
            let at = sim.reconfigurations[index].time;
            sim.schedule(at, EventKind::Reconfigure { index });
        }
        for user in 0..sim.users.len() {
            sim.schedule(Time::zero(), EventKind::SourceSend { user });
        }
        Ok(sim)
    }

    pub fn now(&self) -> Time {
        self.now
    }

    pub fn servers(&self) -> &[ServerState] {
        &self.servers
    }

    pub fn in_flight(&self, user: usize) -> u32 {
        self.users[user].in_flight
    }

    pub fn controller(&self, user: usize) -> &Controller {
        &self.users[user].controller
    }

    pub fn trace(&self) -> &Trace {
        &self.trace
    }

    fn schedule(&mut self, time: Time, kind: EventKind) {
        debug_assert!(time >= self.now, "event scheduled in the past");
        let event = Event {
            time,
            seq: self.seq,
            kind,
        };
        self.seq += 1;
        self.events.push(Reverse(event));
    }

    fn finished(&self) -> bool {
        match self.run_length {
            RunLength::Time(_) => false,
            RunLength::Acks(limit) => self.trace.packets_acked >= limit,
        }
    }

    /// Processes the next event. Returns `false` once the run is over.
    pub fn step(&mut self) -> Result<bool> {
        if self.finished() {
            return Ok(false);
        }
        let Some(Reverse(event)) = self.events.peek().copied() else {
            return Ok(false);
        };
        if let RunLength::Time(end) = self.run_length {
            if event.time > end {
                self.now = end;
                return Ok(false);
            }
        }
        self.events.pop();
        self.now = event.time;
        match event.kind {
            EventKind::SourceSend { user } => self.top_up(user),
            EventKind::ServiceComplete { server } => self.complete_service(server),
            EventKind::FixedDelayExpire { packet, stage } => self.arrive(packet, stage + 1),
            EventKind::AckDeliver { packet } => self.deliver_ack(packet)?,
            EventKind::Reconfigure { index } => {
                let change = self.reconfigurations[index].clone();
                self.apply_reconfiguration(&change)?;
            }
        }
        Ok(true)
    }

    pub fn run_to_end(mut self) -> Result<Trace> {
        while self.step()? {}
        self.trace.end_time = self.now;
        Ok(self.trace)
    }

    /// Replaces a server's service time. A packet already in service
    /// finishes at the old rate.
    pub fn apply_reconfiguration(&mut self, change: &ReconfigureEvent) -> Result<()> {
        let count = self.servers.len();
        let server = self.servers.get_mut(change.server_index).ok_or_else(|| {
            Error::Config(format!(
                "reconfiguration names server {} but the path has {count}",
                change.server_index
            ))
        })?;
        if change.new_service_time <= Time::zero() {
            return Err(Error::domain(
                "new_service_time",
                time::to_f64(change.new_service_time),
                "must be positive",
            ));
        }
        server.spec.set_service_time(change.new_service_time);
        Ok(())
    }

    fn record(
        &mut self,
        user: usize,
        kind: RecordKind,
        rtt: Option<Time>,
        decision: Option<&Decision>,
    ) {
        let wanted = match kind {
            RecordKind::Send => self.options.sends,
            RecordKind::Ack => self.options.acks,
            RecordKind::Decision => self.options.decisions,
        };
        if !wanted {
            return;
        }
        let controller = &self.users[user].controller;
        self.trace.records.push(TraceRecord {
            time: time::to_f64(self.now),
            user_id: user,
            event_kind: kind,
            window_real: controller.window(),
            window_int: controller.packets_target(),
            rtt: rtt.map(time::to_f64),
            rule_statistic: decision.and_then(|d| d.statistic),
            direction: decision.map(|d| d.direction),
        });
    }

    /// Sends until the user has `round(window)` packets in flight. When a
    /// measurement is due the first packet of the burst is timed.
    fn top_up(&mut self, user: usize) {
        let target = self.users[user].controller.packets_target();
        let in_flight = self.users[user].in_flight;
        if in_flight >= target {
            return;
        }
        let burst = target - in_flight;
        for i in 0..burst {
            let u = &mut self.users[user];
            u.in_flight += 1;
            // Later packets of a burst queue behind the first, so the first
            // is the one timed.
            let stamp = (i == 0 && u.controller.timing_armed())
                .then(|| u.controller.on_packet_sent(self.now, u.in_flight));
            let id = self.next_packet;
            self.next_packet += 1;
            self.packets.insert(
                id,
                Packet {
                    id,
                    user,
                    send_time: self.now,
                    stamp,
                },
            );
            self.trace.packets_sent += 1;
            self.record(user, RecordKind::Send, None, None);
            self.arrive(id, 0);
        }
    }

    fn arrive(&mut self, packet: u64, stage: usize) {
        if stage == self.servers.len() {
            self.schedule(self.now, EventKind::AckDeliver { packet });
            return;
        }
        let server = &mut self.servers[stage];
        match server.spec.kind() {
            ServerKind::FixedDelay => {
                let at = self.now + server.spec.service_time();
                self.schedule(at, EventKind::FixedDelayExpire { packet, stage });
            }
            ServerKind::Queueing => {
                server.queue.push_back(packet);
                if server.in_service.is_none() {
                    self.start_service(stage);
                }
            }
        }
    }

    fn start_service(&mut self, stage: usize) {
        let server = &mut self.servers[stage];
        if let Some(packet) = server.queue.pop_front() {
            server.in_service = Some(packet);
            server.busy_until = self.now + server.spec.service_time();
            let at = server.busy_until;
            self.schedule(at, EventKind::ServiceComplete { server: stage });
        }
    }

    fn complete_service(&mut self, stage: usize) {
        let packet = self.servers[stage]
            .in_service
            .take()
            .expect("service completion without a packet in service");
        self.start_service(stage);
        self.arrive(packet, stage + 1);
    }

    fn deliver_ack(&mut self, id: u64) -> Result<()> {
        let packet = self.packets.remove(&id).expect("ack for unknown packet");
        let user = packet.user;
        let rtt = self.now - packet.send_time;
        self.users[user].in_flight -= 1;
        self.trace.packets_acked += 1;
        self.trace.rtts.push(RttSample {
            user,
            ack_time: self.now,
            rtt,
            timed: packet.stamp.is_some(),
        });
        self.record(user, RecordKind::Ack, Some(rtt), None);
        if let Some(stamp) = packet.stamp {
            let now = self.now;
            if let Some(decision) = self.users[user].controller.on_ack(stamp, now)? {
                self.record(user, RecordKind::Decision, None, Some(&decision));
            }
        }
        self.top_up(user);
        Ok(())
    }
}

/// Runs a scenario to completion.
pub fn run(scenario: &Scenario) -> Result<Trace> {
    Simulation::new(scenario)?.run_to_end()
}
