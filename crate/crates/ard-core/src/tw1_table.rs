//! Precomputed CDF grid of the Tracy-Widom distribution for the Gaussian
//! Orthogonal Ensemble (TW1), tabulated on t in [-10, 8] at step 0.01.
//!
//! Built offline by integrating the Hastings-McLeod solution of the
//! Painleve II equation q'' = t q + 2 q^3 (Airy initial data at t = 12,
//! 36-digit arithmetic) and forming F1(t) = exp(-(I + J)/2) with
//! I = int (x - t) q^2 dx and J = int q dx over (t, inf). Checked against
//! published quantiles: F1(0.9793) = 0.950, F1(2.0234) = 0.990.

pub(crate) const TW1_GRID_LO: f64 = -10.0;
pub(crate) const TW1_GRID_HI: f64 = 8.0;
pub(crate) const TW1_GRID_STEP: f64 = 0.01;

#[rustfmt::skip]
pub(crate) static TW1_CDF: [f64; 1801] = [
    3.159037903199627e-22, 3.61966435856965e-22, 4.1463971560075056e-22, 4.74856878774971e-22,
    5.436806992466319e-22, 6.223211369053521e-22, 7.121553633577424e-22, 8.147504624326471e-22,
    9.31889155959995e-22, 1.0655989502906728e-21, 1.2181851496882603e-21, 1.3922682397416104e-21,
    1.5908262080996554e-21, 1.8172424419894437e-21, 2.0753599231225397e-21, 2.369542531817366e-21,
    2.7047443746896455e-21, 3.0865881654587496e-21, 3.5214538178153245e-21, 4.016578554606442e-21,
    4.580170000731396e-21, 5.221533910241271e-21, 5.951218383585729e-21, 6.781176661416815e-21,
    7.72495083981799e-21, 8.797879141598554e-21, 1.0017329703084926e-20, 1.1402964199784918e-20,
    1.297703504200868e-20, 1.476472032813969e-20, 1.6794501254488617e-20, 1.9098587252913818e-20,
    2.1713394767763193e-20, 2.468008630009968e-20, 2.804517714842897e-20, 3.1861218171062363e-20,
    3.618756389673275e-20, 4.1091236429278e-20, 4.664789684261261e-20, 5.294293715883461e-20,
    6.007270756183989e-20, 6.814589523977602e-20, 7.728507319264901e-20, 8.762843950926378e-20,
    9.933177003581395e-20, 1.1257061005501262e-19, 1.2754273360093077e-19, 1.4447090238536073e-19,
    1.6360596004500296e-19, 1.8523030157771655e-19, 2.096617624677333e-19, 2.3725797715646724e-19,
    2.684212622553601e-19, 3.0360408628431865e-19, 3.4331519482483845e-19, 3.881264678795812e-19,
    4.386805950170815e-19, 4.956996636477468e-19, 5.599947666319488e-19, 6.324767474805839e-19,
    7.141682148032381e-19, 8.062169725329097e-19, 9.099110289680913e-19, 1.0266953659984465e-18,
    1.1581906702131775e-18, 1.306214250145415e-18, 1.4728033889176933e-18, 1.6602414092832406e-18,
    1.871086758792737e-18, 2.1082054568730507e-18, 2.374807283332478e-18, 2.6744861295908773e-18,
    3.0112649801967444e-18, 3.389646043403552e-18, 3.8146666062486736e-18, 4.291961252275768e-18,
    4.827831149388442e-18, 5.429321192004351e-18, 6.104305866448402e-18, 6.861584802209862e-18,
    7.710989075201992e-18, 8.663499443505365e-18, 9.731377822347206e-18, 1.0928313444477094e-17,
    1.2269585305970753e-17, 1.3772242667284964e-17, 1.5455305566696175e-17, 1.733998750983707e-17,
    1.9449942726822703e-17, 2.1811540639540916e-17, 2.4454170458382657e-17, 2.7410579132542327e-17,
    3.071724621380297e-17, 3.4414799563479263e-17, 3.854847623925436e-17, 4.3168633346662957e-17,
    4.833131413293484e-17, 5.409887514319051e-17, 6.054068085535163e-17, 6.773387286582203e-17,
    7.576422141872474e-17, 8.47270678634932e-17, 9.472836749573723e-17, 1.0588584319199442e-16,
    1.1833026129837896e-16, 1.3220684238514694e-16, 1.4767682074351644e-16, 1.649191678883068e-16,
    1.8413249685165111e-16, 2.0553716572179602e-16, 2.293776007105775e-16, 2.5592486103853626e-16,
    2.854794701241402e-16, 3.18374539971005e-16, 3.549792182837305e-16, 3.957024907300954e-16,
    4.4099737392785904e-16, 4.913655381932985e-16, 5.473624028730765e-16, 6.096027512206744e-16,
    6.787669163056211e-16, 7.556075943930864e-16, 8.40957347641105e-16, 9.35736863874093e-16,
    1.0409640476492642e-15, 1.1577640238858272e-15, 1.2873801430283398e-15, 1.4311860851227765e-15,
    1.5906991693590485e-15, 1.767594985644535e-15, 1.9637234756929643e-15, 2.1811266030212614e-15,
    2.4220577642299232e-15, 2.689003108093525e-15, 2.9847049444082846e-15, 3.3121874413428037e-15,
    3.674784828334892e-15, 4.0761723415001615e-15, 4.520400170205957e-15, 5.011930687067549e-15,
    5.555679269305044e-15, 6.157059047335184e-15, 6.822029946852188e-15, 7.557152423681716e-15,
    8.369646326593939e-15, 9.26745536227549e-15, 1.0259317679044932e-14, 1.1354843131931798e-14,
    1.256459784172742e-14, 1.390019671488214e-14, 1.5374404650019613e-14, 1.7001247220743782e-14,
    1.8796131693736112e-14, 2.0775979316320414e-14, 2.2959369889184478e-14, 2.536669972830301e-14,
    2.8020354215855734e-14, 3.094489624367058e-14, 3.4167271965082984e-14, 3.771703539277499e-14,
    4.162659351188098e-14, 4.593147372021482e-14, 5.067061556174089e-14, 5.588668888629633e-14,
    6.162644074906227e-14, 6.794107355843677e-14, 7.488665719192196e-14, 8.252457802762444e-14,
    9.092202808529566e-14, 1.0015253773691493e-13, 1.1029655573415647e-13, 1.2144208061030267e-13,
    1.3368534784900916e-13, 1.4713157757365797e-13, 1.6189578790084937e-13, 1.781036795220251e-13,
    1.9589259753057638e-13, 2.1541257700052693e-13, 2.3682747934962375e-13, 2.603162270872317e-13,
    2.860741451588217e-13, 3.143144177572919e-13, 3.4526967018030833e-13, 3.791936860759829e-13,
    4.163632712404592e-13, 4.570802760145566e-13, 5.016737892770289e-13, 5.505025180540224e-13,
    6.039573678630969e-13, 6.624642400911781e-13, 7.2648706397487e-13, 7.965310821149063e-13,
    8.731464099208126e-13, 9.56931890954146e-13, 1.0485392718265568e-12, 1.1486777221204005e-12,
    1.2581187267433053e-12, 1.3777013802130969e-12, 1.5083381146055159e-12, 1.6510208952946026e-12,
    1.8068279211854525e-12, 1.976930868893017e-12, 2.1626027232711813e-12, 2.3652262398567356e-12,
    2.5863030881772175e-12, 2.8274637284948093e-12, 3.09047807843656e-12, 3.377267030110949e-12,
    3.6899148827502526e-12, 4.0306827606662754e-12, 4.402023091384087e-12, 4.806595224245789e-12,
    5.247282275576863e-12, 5.727209292705433e-12, 6.249762835745313e-12, 6.818612083124207e-12,
    7.437731574387523e-12, 8.111425711866404e-12, 8.844355151397944e-12, 9.641565221460287e-12,
    1.0508516519871413e-11, 1.145111784763616e-11, 1.2475761650651658e-11, 1.3589362151839748e-11,
    1.4799396368911034e-11, 1.6113948226426864e-11, 1.7541755985163033e-11, 1.9092263227045546e-11,
    2.0775673650180817e-11, 2.2603009945799033e-11, 2.458617704733339e-11, 2.6738030061434817e-11,
    2.9072447211541907e-11, 3.160440814676222e-11, 3.435007799235129e-11, 3.732689754308143e-11,
    4.055368002735947e-11, 4.405071489817144e-11, 4.7839879136898554e-11, 5.194475658786222e-11,
    5.6390765875222966e-11, 6.120529748968873e-11, 6.641786067050005e-11, 7.20602407484748e-11,
    7.816666765864404e-11, 8.477399637632601e-11, 9.192190007851348e-11, 9.965307688333646e-11,
    1.0801347107426712e-10, 1.1705250977282029e-10, 1.2682335608394441e-10, 1.3738317980227516e-10,
    1.4879344683512702e-10, 1.611202285697283e-10, 1.7443453248796635e-10, 1.888126554120266e-10,
    2.0433656084900672e-10, 2.2109428199210504e-10, 2.391803520305753e-10, 2.5869626352056494e-10,
    2.7975095867449154e-10, 3.02461352538042e-10, 3.26952891141512e-10, 3.5336014683633846e-10,
    3.818274531586586e-10, 4.125095816998836e-10, 4.455724636099711e-10, 4.811939585126818e-10,
    5.195646737740104e-10, 5.60888837235585e-10, 6.053852267045611e-10, 6.532881596808404e-10,
    7.048485470017628e-10, 7.603350142942602e-10, 8.200350953452848e-10, 8.842565017336871e-10,
    9.533284733111226e-10, 1.0276032143766094e-09, 1.107457420659594e-09, 1.1932939025104271e-09,
    1.2855433099956508e-09, 1.3846659659090705e-09, 1.4911538130389505e-09, 1.605532482377512e-09,
    1.7283634893219502e-09, 1.860246565297226e-09, 2.001822132630645e-09, 2.1537739309276107e-09,
    2.3168318036376933e-09, 2.4917746539612375e-09, 2.6794335797300007e-09, 2.8806951974017164e-09,
    3.096505165839022e-09, 3.327871921098816e-09, 3.5758706340399155e-09, 3.841647403165918e-09,
    4.1264236957575265e-09, 4.4315010510154496e-09, 4.758266059632515e-09, 5.108195634943008e-09,
    5.482862591559814e-09, 5.883941548206907e-09, 6.31321517228749e-09, 6.772580784598011e-09,
    7.264057343506746e-09, 7.789792828864162e-09, 8.352072046902323e-09, 8.953324878413716e-09,
    9.59613499357768e-09, 1.028324905792666e-08, 1.1017586455116618e-08, 1.1802249553387658e-08,
    1.264053454387409e-08, 1.3535942880249661e-08, 1.4492193350575256e-08, 1.5513234813654985e-08,
    1.6603259633704122e-08, 1.7766717848690904e-08, 1.9008332109335768e-08, 2.0333113427438174e-08,
    2.1746377773955007e-08, 2.3253763569077767e-08, 2.4861250108450638e-08, 2.6575176971640118e-08,
    2.8402264461011952e-08, 3.034963512129439e-08, 3.242483639231127e-08, 3.463586444965629e-08,
    3.6991189290453104e-08, 3.949978112380848e-08, 4.217113812811823e-08, 4.50153156400325e-08,
    4.804295684262959e-08, 5.126532502318934e-08, 5.46943374739001e-08, 5.834260111188119e-08,
    6.22234498980572e-08, 6.635098413768542e-08, 7.074011174871503e-08, 7.540659158764955e-08,
    8.036707892619598e-08, 8.563917317571707e-08, 9.124146796035999e-08, 9.719360364372018e-08,
    1.0351632241801347e-07, 1.1023152606897783e-07, 1.1736233653411034e-07, 1.2493315937636873e-07,
    1.3296975030013188e-07, 1.414992848410244e-07, 1.5055043136616957e-07, 1.6015342752654337e-07,
    1.7034016030836708e-07, 1.8114424983589513e-07, 1.9260113708353512e-07, 2.0474817566097962e-07,
    2.176247278409361e-07, 2.31272265005118e-07, 2.457344726904055e-07, 2.6105736042350444e-07,
    2.772893765390285e-07, 2.94481528182702e-07, 3.1268750670833764e-07, 3.3196381868438107e-07,
    3.523699227331377e-07, 3.7396837243330985e-07, 3.968249655241727e-07, 4.2100889965761135e-07,
    4.4659293495232765e-07, 4.7365356361280813e-07, 5.022711868841226e-07, 5.325302996223006e-07,
    5.645196827689096e-07, 5.983326040275366e-07, 6.34067027049154e-07, 6.718258294428314e-07,
    7.117170299379407e-07, 7.538540250338884e-07, 7.983558354835028e-07, 8.45347362966495e-07,
    8.949596573199144e-07, 9.473301947032169e-07, 1.0026031670864692e-06, 1.0609297834613143e-06,
    1.122468583185624e-06, 1.1873857618842723e-06, 1.2558555103401488e-06, 1.3280603668214344e-06,
    1.4041915833032303e-06, 1.4844495060539146e-06, 1.5690439710690443e-06, 1.6581947148482647e-06,
    1.7521318010235026e-06, 1.8510960633597048e-06, 1.955339565662542e-06, 2.065126079140823e-06,
    2.180731577784836e-06, 2.302444752335475e-06, 2.4305675434327777e-06, 2.56541569454643e-06,
    2.7073193253048264e-06, 2.856623525853474e-06, 3.013688972887788e-06, 3.178892568019754e-06,
    3.3526280991524154e-06, 3.5353069255507276e-06, 3.727358687312001e-06, 3.929232039953873e-06,
    4.141395414852554e-06, 4.364337806278924e-06, 4.598569585794919e-06, 4.844623344787559e-06,
    5.103054765932844e-06, 5.374443524396647e-06, 5.659394219594618e-06, 5.958537338347903e-06,
    6.272530250286333e-06, 6.602058236365376e-06, 6.9478355513778424e-06, 7.310606521355814e-06,
    7.691146676772695e-06, 8.090263922469549e-06, 8.508799745243996e-06, 8.94763046005388e-06,
    9.407668495801612e-06, 9.889863721678695e-06, 1.0395204815063113e-05, 1.0924720671975327e-05,
    1.147948186111136e-05, 1.2060602122483815e-05, 1.2669239911713793e-05, 1.3306599991028409e-05,
    1.397393506802989e-05, 1.467254748331324e-05, 1.5403790948019884e-05, 1.616907233242483e-05,
    1.6969853506664324e-05, 1.7807653234720104e-05, 1.8684049122784754e-05, 1.9600679623140695e-05,
    2.055924609469248e-05, 2.156151492129895e-05, 2.260931968905762e-05, 2.3704563423699123e-05,
    2.4849220889254118e-05, 2.6045340949158804e-05, 2.7295048990968406e-05, 2.8600549415850103e-05,
    2.9964128194028306e-05, 3.1388155487355696e-05, 3.287508834018301e-05, 3.442747343969921e-05,
    3.604794994691135e-05, 3.773925239942998e-05, 3.95042136872217e-05, 4.134576810248485e-05,
    4.326695446479782e-05, 4.5270919322681476e-05, 4.7360920232708706e-05, 4.954032911728341e-05,
    5.181263570220033e-05, 5.418145103508407e-05, 5.665051108579188e-05, 5.922368042984938e-05,
    6.190495601597164e-05, 6.469847101870398e-05, 6.76084987771971e-05, 7.063945682111041e-05,
    7.379591098461453e-05, 7.708257960944019e-05, 8.05043378378946e-05, 8.406622199674e-05,
    8.777343407279908e-05, 9.163134628112242e-05, 9.564550572652055e-05, 9.982163915922918e-05,
    0.00010416565782544082, 0.00010868366241339854, 0.0001133819480957085, 0.00011826700966848693,
    0.0001233455467879146, 0.00012862446930472717, 0.00013411090269712327, 0.0001398121936025245,
    0.0001457359154485703, 0.0001518898741836797, 0.0001582821141074572, 0.00016492092380116446,
    0.0001718148421584221, 0.00017897266451624488, 0.00018640344888645342, 0.0001941165222874409,
    0.00020212148717620797, 0.0002104282279805117, 0.0002190469177309045, 0.00022798802479236801,
    0.00023726231969517335, 0.00024688088206452385, 0.00025685510764845906, 0.00026719671544342025,
    0.0002779177549167959, 0.000289030613325683, 0.0003005480231310162, 0.000312483069506128,
    0.0003248491979387181, 0.00033766022192511586, 0.00035093033075563247, 0.0003646740973897008,
    0.0003789064864194099, 0.0003936428621199419, 0.00040889899658531984, 0.00042469107794777735,
    0.0004410357186789561, 0.0004579499639710366, 0.0004754513001958015, 0.0004935576634395246,
    0.0005122874481114731, 0.0005316595156236987, 0.0005516932031396867, 0.0005724083323893201,
    0.0005938252185475014, 0.0006159646791736645, 0.0006388480432092955, 0.0006624971600304619,
    0.0006869344085522384, 0.0007121827063817996, 0.0007382655190168319, 0.0007652068690858,
    0.0007930313456264848, 0.0008217641133990927, 0.0008514309222301134, 0.0008820581163829895,
    0.0009136726439515382, 0.0009463020662719466, 0.000979974567349046, 0.0010147189632924482,
    0.0010505647117580097, 0.001087541921389972, 0.0011256813612590076, 0.0011650144702912866,
    0.0012055733666835567, 0.0012473908572991227, 0.0012905004470394883, 0.001334936348186318,
    0.0013807334897082552, 0.0014279275265270312, 0.0014765548487371861, 0.001526652590773611,
    0.0015782586405210235, 0.0016314116483593746, 0.0016861510361390923, 0.0017425170060799578,
    0.001800550549587318, 0.0018602934559792403, 0.0019217883211181221, 0.0019850785559401775,
    0.002050208394876134, 0.0021172229041563893, 0.002186167989993793, 0.0022570904066371395,
    0.0023300377642883887, 0.002405058536876545, 0.0024822020696810667, 0.002561518586797616,
    0.0026430591984388787, 0.00272687590806315, 0.002813021619323307, 0.002901550142828752,
    0.00299251620271286, 0.0030859754429984213, 0.003181984433753535, 0.0032806006770303773,
    0.003381882612579239, 0.003485889623330204, 0.00359268204063482, 0.003702321149260107,
    0.0038148691921272323, 0.003930389374787182, 0.004048945869625758, 0.0041706038197902445,
    0.004295429342830096, 0.004423489534044011, 0.004554852469525791, 0.004689587208901414,
    0.004827763797749773, 0.004969453269699592, 0.005114727648195062, 0.005263659947922803,
    0.005416324175892808, 0.005572795332166111, 0.005733149410221962, 0.005897463396957395,
    0.0060658152723121455, 0.0062382840085119734, 0.006414949568923532, 0.006595892906514037,
    0.006781195961909096, 0.0069709416610421624, 0.007165213912389222, 0.0073640976037824294,
    0.00756767859879655, 0.007776043732702204, 0.007989280807980066, 0.008207478589390306,
    0.008430726798591739, 0.008659116108305293, 0.008892738136016598, 0.009131685437212664,
    0.009376051498147811, 0.009625930728134169, 0.009881418451352321, 0.010142610898177808,
    0.010409605196019455, 0.01068249935966567, 0.01096139228113511, 0.011246383719028297,
    0.011537574287377042, 0.011835065443988723, 0.012138959478282738, 0.012449359498616683,
    0.012766369419100062, 0.013090093945893565, 0.013420638562992278, 0.013758109517491346,
    0.014102613804332989, 0.014454259150533978, 0.014813153998892945, 0.015179407491177261,
    0.015553129450789387, 0.015934430364913002, 0.016323421366139408, 0.0167202142135751,
    0.017124921273431584, 0.01753765549909894, 0.017958530410704797, 0.01838766007416086,
    0.018825159079699262, 0.01927114251990144, 0.019725725967222534, 0.020189025451014548,
    0.02066115743405194, 0.021142238788563503, 0.021632386771774842, 0.02213171900096592,
    0.022640353428048647, 0.023158408313669637, 0.023686002200843666, 0.02422325388812367,
    0.024770282402313437, 0.025327206970729436, 0.025894146993018608, 0.026471222012539188,
    0.027058551687311964, 0.027656255760549756, 0.028264454030773076, 0.028883266321520384,
    0.029512812450661535, 0.03015321219932342, 0.030804585280437034, 0.0314670513069155,
    0.032140729759472984, 0.032825739954094504, 0.03352220100916718, 0.03423023181228361,
    0.03494995098672826, 0.035681476857658295, 0.036424927417990215, 0.0371804202940042,
    0.0379480727106782, 0.038728001456764014, 0.03952032284961798, 0.040325152699799055,
    0.041142606275447316, 0.0419727982664561, 0.04281584274845136, 0.043671853146591846,
    0.04454094219920406, 0.04542322192126614, 0.046318803567754877, 0.04722779759687049,
    0.04815031363315372, 0.04908646043051014, 0.050036345835156745, 0.05100007674850588,
    0.051977759090001886, 0.05296949775992595, 0.05397539660218469, 0.054995558367098185,
    0.05603008467420331, 0.057079075975088274, 0.058142631516274385, 0.059220849302161156,
    0.06031382605805092, 0.06142165719326922, 0.0625444367643973, 0.06368225743863301,
    0.06483521045729648, 0.06600338559949721, 0.06718687114597868, 0.06838575384315716,
    0.06960011886737126, 0.07083004978935827, 0.07207562853897415, 0.07333693537017331,
    0.07461404882626461, 0.07590704570545984, 0.07721600102673089, 0.07854098799599193,
    0.07988207797262259, 0.08123934043634798, 0.0826128429544918, 0.08400265114961802,
    0.08540882866757696, 0.08683143714597126, 0.08827053618305715, 0.08972618330709625,
    0.09119843394617312, 0.09268734139849322, 0.09419295680317638, 0.09571532911156005,
    0.09725450505902694, 0.09881052913737091, 0.10038344356771549, 0.10197328827399836,
    0.10358010085703558, 0.10520391656917862, 0.10684476828957742, 0.10850268650006206,
    0.11017769926165567, 0.11186983219173076, 0.11357910844182086, 0.11530554867609934,
    0.11704917105053655, 0.11880999119274652, 0.12058802218253381, 0.12238327453315129,
    0.12419575617327858, 0.1260254724297313, 0.12787242601091045, 0.12973661699100095,
    0.13161804279492842, 0.13351669818408257, 0.13543257524281488, 0.13736566336571904,
    0.1393159492457009, 0.1412834168628452, 0.1432680474740858, 0.14526981960368535,
    0.14728870903453056, 0.1493246888002487, 0.1513777291781498, 0.1534477976829999,
    0.1555348590616297, 0.15763887528838183, 0.1597598055614012, 0.1618976062997709,
    0.1640522311414966, 0.16622363094234216, 0.1684117537755174, 0.170616544932221,
    0.17283794692303825, 0.17507589948019533, 0.17733033956067004, 0.17960120135015897,
    0.1818884162679008, 0.18419191297235446, 0.18651161736773128, 0.18884745261137934,
    0.19119933912201773, 0.19356719458881846, 0.19595093398133312, 0.19835046956026103,
    0.2007657108890551, 0.2031965648463616, 0.20564293563928912, 0.20810472481750228,
    0.21058183128813465, 0.2130741513315156, 0.21558157861770505, 0.2181040042238297,
    0.22064131665221445, 0.22319340184930175, 0.22576014322535135, 0.2283414216749132,
    0.2309371155980652, 0.23354710092240735, 0.2361712511258037, 0.23880943725986314,
    0.24146152797414952, 0.2441273895411115, 0.24680688588172217, 0.24949987859181819,
    0.2522062269691278, 0.254925788040977, 0.25765841659266236, 0.2604039651964799,
    0.2631622842413972, 0.26593322196335806, 0.26871662447620626, 0.27151233580321704,
    0.2743201979092233, 0.27714005073332315, 0.2799717322221566, 0.28281507836373704,
    0.285669923221825, 0.28853609897082966, 0.2914134359312246, 0.29430176260546376,
    0.2972009057143826, 0.3001106902340717, 0.30303093943320575, 0.30596147491081566,
    0.3089021166344874, 0.31185268297897306, 0.31481299076519864, 0.317782855299654,
    0.3207620904141494, 0.32375050850592224, 0.32674792057808016, 0.3297541362803637,
    0.33276896395021266, 0.33579221065412185, 0.33882368222926856, 0.3418631833253976,
    0.34491051744694684, 0.3479654869953978, 0.3510278933118357, 0.3540975367197023,
    0.35717421656772613, 0.36025773127301436, 0.36334787836428933, 0.36644445452525537,
    0.36954725563807883, 0.37265607682696567, 0.37577071250182176, 0.3788909564019787,
    0.3820166016399706, 0.3851474407453459, 0.3882832657084985, 0.39142386802450263,
    0.39456903873693683, 0.39771856848168086, 0.40087224753067113, 0.4040298658355989,
    0.40719121307153705, 0.4103560786804799, 0.41352425191478187, 0.4166955218804802,
    0.4198696775804876, 0.4230465079576402, 0.4262258019375868, 0.4294073484715057,
    0.4325909365786351, 0.43577635538860376, 0.43896339418354763, 0.44215184244000083,
    0.445341489870546, 0.44853212646521257, 0.45172354253260977, 0.45491552874078167,
    0.45810787615777265, 0.4613003762918903, 0.4644928211316549, 0.4676850031854232,
    0.4708767155206753, 0.4740677518029532, 0.47725790633444093, 0.4804469740921743,
    0.4836347507658705, 0.4868210327953675, 0.4900056174076628, 0.4931883026535418,
    0.49636888744378643, 0.4995471715849548, 0.5027229558147228, 0.5058960418367786,
    0.5090662323552624, 0.5122333311087416, 0.5153971429037154, 0.5185574736476393,
    0.521714130381463, 0.5248669213116743, 0.528015655841842, 0.5311601446036507,
    0.534300199487422, 0.537435633672115, 0.5405662616548004, 0.5436918992796029,
    0.5468123637661069, 0.5499274737372182, 0.5530370492464803, 0.5561409118048375,
    0.5592388844068421, 0.5623307915563021, 0.5654164592913633, 0.5684957152090252,
    0.5715683884890851, 0.5746343099175084, 0.5776933119092225, 0.5807452285303304,
    0.5837898955197438, 0.5868271503102322, 0.5898568320488862, 0.592878781616994,
    0.5958928416493304, 0.5988988565528555, 0.6018966725248235, 0.6048861375703017,
    0.6078671015190973, 0.6108394160420939, 0.6138029346669968, 0.6167575127934871,
    0.6197030077077873, 0.6226392785966356, 0.6255661865606736, 0.6284835946272463,
    0.6313913677626166, 0.6342893728835957, 0.6371774788685923, 0.6400555565680808,
    0.6429234788144923, 0.6457811204315306, 0.6486283582429146, 0.6514650710805527,
    0.6542911397921484, 0.6571064472482435, 0.6599108783487019, 0.6627043200286348,
    0.6654866612637749, 0.6682577930753006, 0.6710176085341156, 0.673766002764588,
    0.6765028729477525, 0.6792281183239816, 0.6819416401951286, 0.6846433419261496,
    0.687333128946207, 0.6900109087492611, 0.6926765908941547, 0.6953300870041957,
    0.6979713107662442, 0.7006001779293073, 0.7032166063026508, 0.7058205157534305,
    0.7084118282038504, 0.710990467627854, 0.7135563600473541, 0.716109433528008,
    0.7186496181745438, 0.7211768461256443, 0.7236910515483957, 0.7261921706323072,
    0.7286801415829064, 0.731154904614921, 0.7336164019450503, 0.7360645777843338,
    0.7384993783301255, 0.7409207517576794, 0.743328648211353, 0.7457230197954371,
    0.7481038205646175, 0.7504710065140772, 0.7528245355692448, 0.7551643675751979,
    0.7574904642857269, 0.7598027893520684, 0.7621013083113135, 0.7643859885745002,
    0.7666567994143956, 0.7689137119529762, 0.7711566991486137, 0.7733857357829729,
    0.7756007984476293, 0.7778018655304144, 0.7799889172014954, 0.7821619353991967,
    0.7843209038155698, 0.7864658078817224, 0.7885966347529073, 0.7907133732933862,
    0.7928160140610697, 0.7949045492919434, 0.7969789728842874, 0.7990392803826949,
    0.8010854689618988, 0.8031175374104121, 0.8051354861139903, 0.8071393170389212,
    0.8091290337151512, 0.8111046412192539, 0.8130661461572469, 0.815013556647267,
    0.8169468823021058, 0.8188661342116172, 0.8207713249250012, 0.8226624684329693,
    0.8245395801498019, 0.8264026768953006, 0.8282517768766438, 0.830086899670152,
    0.8319080662029684, 0.8337152987346611, 0.8355086208387542, 0.8372880573841934,
    0.839053634516751, 0.8408053796403783, 0.8425433213985106, 0.84426748965533,
    0.8459779154769926, 0.8476746311128253, 0.8493576699764989, 0.8510270666271813,
    0.8526828567506783, 0.8543250771405662, 0.8559537656793204, 0.8575689613194495,
    0.8591707040646344, 0.8607590349508821, 0.8623339960276968, 0.8638956303392733,
    0.86544398190572, 0.866979095704312, 0.868501017650783, 0.8700097945806586,
    0.8715054742306354, 0.8729881052200112, 0.8744577370321702, 0.8759144199961275,
    0.8773582052681365, 0.8787891448133643, 0.8802072913876393, 0.8816126985192718,
    0.883005420490957, 0.8843855123217579, 0.8857530297491775, 0.8871080292113184,
    0.8884505678291386, 0.8897807033888021, 0.8910984943241311, 0.8924039996991615,
    0.893697279190804, 0.8949783930716164, 0.8962474021926872, 0.8975043679666347,
    0.898749352350726, 0.8999824178301139, 0.901203627401201, 0.9024130445551262,
    0.9036107332613827, 0.9047967579515656, 0.9059711835032518, 0.9071340752240176,
    0.9082854988355917, 0.9094255204581491, 0.9105542065947453, 0.9116716241158953,
    0.9127778402442972, 0.9138729225397023, 0.9149569388839349, 0.9160299574660611,
    0.9170920467677108, 0.9181432755485517, 0.9191837128319178, 0.9202134278905953,
    0.9212324902327633, 0.9222409695880948, 0.9232389358940152, 0.924226459282123,
    0.9252036100647699, 0.9261704587218046, 0.9271270758874784, 0.9280735323375154,
    0.9290098989763464, 0.9299362468245085, 0.9308526470062092, 0.9317591707370584,
    0.9326558893119651, 0.9335428740932018, 0.9344201964986367, 0.935287927990132,
    0.9361461400621114, 0.936994904230294, 0.937834292020598, 0.9386643749582106,
    0.9394852245568269, 0.9402969123080567, 0.9410995096709985, 0.9418930880619826,
    0.9426777188444797, 0.9434534733191785, 0.9442204227142296, 0.9449786381756553,
    0.945728190757927, 0.9464691514147074, 0.9472015909897582, 0.9479255802080124,
    0.9486411896668118, 0.9493484898273067, 0.9500475510060199, 0.950738443366572,
    0.9514212369115695, 0.9520960014746527, 0.9527628067127041, 0.9534217220982165,
    0.9540728169118191, 0.9547161602349614, 0.9553518209427537, 0.9559798676969634,
    0.9566003689391662, 0.9572133928840508, 0.957819007512877, 0.9584172805670844,
    0.9590082795420535, 0.9595920716810141, 0.9601687239691048, 0.9607383031275772,
    0.9613008756081484, 0.9618565075874967, 0.9624052649619027, 0.9629472133420315,
    0.9634824180478572, 0.9640109441037266, 0.9645328562335624, 0.965048218856204,
    0.9655570960808826, 0.966059551702834, 0.9665556491990422, 0.9670454517241173,
    0.9675290221063022, 0.9680064228436103, 0.9684777161000903, 0.9689429637022178,
    0.969402227135412, 0.9698555675406768, 0.9703030457113629, 0.9707447220900525,
    0.9711806567655618, 0.971610909470063, 0.9720355395763218, 0.9724546060950506,
    0.9728681676723749, 0.9732762825874124, 0.9736790087499624, 0.9740764036983045,
    0.9744685245971054, 0.9748554282354314, 0.975237171024866, 0.9756138089977311,
    0.9759853978054095, 0.9763519927167681, 0.9767136486166798, 0.9770704200046431,
    0.9774223609934969, 0.9777695253082312, 0.9781119662848886, 0.9784497368695594,
    0.9787828896174654, 0.9791114766921332, 0.9794355498646533, 0.9797551605130266,
    0.9800703596215936, 0.9803811977805472, 0.9806877251855264, 0.9809899916372902,
    0.98128804654147, 0.9815819389083984, 0.9818717173530147, 0.9821574300948437,
    0.9824391249580477, 0.98271684937155, 0.9829906503692283, 0.983260574590177,
    0.9835266682790365, 0.9837889772863888, 0.9840475470692175, 0.9843024226914311,
    0.9845536488244485, 0.9848012697478448, 0.9850453293500564, 0.9852858711291447,
    0.9855229381936158, 0.9857565732632962, 0.9859868186702626, 0.9862137163598241,
    0.9864373078915574, 0.9866576344403906, 0.9868747367977384, 0.9870886553726835,
    0.9872994301932059, 0.9875071009074574, 0.9877117067850811, 0.9879132867185734,
    0.9881118792246889, 0.9883075224458865, 0.9885002541518142, 0.9886901117408343,
    0.9888771322415852, 0.98906135231458, 0.9892428082538415, 0.9894215359885701,
    0.9895975710848466, 0.9897709487473669, 0.9899417038212078, 0.9901098707936234,
    0.9902754837958713, 0.9904385766050658, 0.9905991826460606, 0.9907573349933563,
    0.9909130663730337, 0.9910664091647127, 0.9912173954035334, 0.9913660567821608,
    0.991512424652812, 0.9916565300293023, 0.991798403589114, 0.9919380756754823,
    0.9920755762995012, 0.9922109351422459, 0.9923441815569125, 0.9924753445709739,
    0.9926044528883502, 0.992731534891594, 0.9928566186440897, 0.9929797318922642,
    0.993100902067812, 0.9932201562899298, 0.9933375213675627, 0.9934530238016603,
    0.9935666897874424, 0.9936785452166725, 0.9937886156799401, 0.9938969264689502,
    0.9940035025788191, 0.9941083687103768, 0.9942115492724742, 0.994313068384296,
    0.994412949877677, 0.9945112172994225, 0.9946078939136318, 0.9947030027040241,
    0.9947965663762666, 0.9948886073603035, 0.9949791478126873, 0.9950682096189082,
    0.9951558143957262, 0.9952419834935001, 0.9953267379985172, 0.9954100987353208,
    0.9954920862690352, 0.9955727209076896, 0.9956520227045376, 0.9957300114603749,
    0.9958067067258518, 0.9958821278037827, 0.9959562937514508, 0.9960292233829072,
    0.9961009352712659, 0.9961714477509919, 0.9962407789201844, 0.996308946642853,
    0.9963759685511869, 0.9964418620478179, 0.9965066443080756, 0.9965703322822342,
    0.9966329426977534, 0.9966944920615078, 0.9967549966620113, 0.99681447257163,
    0.9968729356487869, 0.9969304015401574, 0.9969868856828554, 0.9970424033066082,
    0.9970969694359227, 0.9971505988922411, 0.9972033062960848, 0.9972551060691888,
    0.997306012436625, 0.9973560394289133, 0.9974052008841223, 0.9974535104499586,
    0.9975009815858423, 0.9975476275649742, 0.997593461476387, 0.9976384962269869,
    0.997682744543582, 0.9977262189748978, 0.9977689318935802, 0.9978108954981862,
    0.997852121815161, 0.9978926227008018, 0.9979324098432096, 0.9979714947642265,
    0.99800988882136, 0.998047603209694, 0.9980846489637859, 0.9981210369595505,
    0.9981567779161292, 0.9981918823977464, 0.9982263608155514, 0.9982602234294463,
    0.9982934803499003, 0.9983261415397494, 0.9983582168159821, 0.9983897158515112,
    0.9984206481769307, 0.998451023182259, 0.998480850118668, 0.998510138100197,
    0.9985388961054522, 0.9985671329792937, 0.9985948574345052, 0.9986220780534514,
    0.9986488032897203, 0.998675041469751, 0.9987008007944466, 0.9987260893407741,
    0.9987509150633479, 0.9987752857960004, 0.9987992092533373, 0.9988226930322792,
    0.9988457446135879, 0.9988683713633788, 0.9988905805346195, 0.9989123792686131,
    0.9989337745964671, 0.9989547734405497, 0.9989753826159296, 0.9989956088318028,
    0.9990154586929059, 0.9990349387009135, 0.9990540552558229, 0.9990728146573242,
    0.9990912231061568, 0.9991092867054512, 0.999127011462058, 0.9991444032878619,
    0.9991614680010829, 0.9991782113275629, 0.9991946389020397, 0.9992107562694066,
    0.999226568885958, 0.9992420821206229, 0.9992573012561843, 0.9992722314904846,
    0.9992868779376192, 0.999301245629115, 0.9993153395150981, 0.9993291644654461,
    0.9993427252709287, 0.9993560266443361, 0.9993690732215922, 0.9993818695628578,
    0.999394420153619, 0.9994067294057647, 0.9994188016586496, 0.9994306411801472,
    0.9994422521676883, 0.9994536387492886, 0.9994648049845636, 0.999475754865731,
    0.9994864923186026, 0.9994970212035624, 0.9995073453165342, 0.9995174683899366,
    0.9995273940936275, 0.9995371260358353, 0.9995466677640811, 0.9995560227660863,
    0.9995651944706725, 0.9995741862486468, 0.9995830014136788, 0.9995916432231648,
    0.9996001148790818, 0.9996084195288305, 0.9996165602660678, 0.9996245401315283,
    0.9996323621138355, 0.9996400291503024, 0.9996475441277219, 0.9996549098831471,
    0.9996621292046604, 0.9996692048321343, 0.9996761394579805, 0.9996829357278901,
    0.9996895962415638, 0.999696123553432, 0.9997025201733657, 0.9997087885673782,
    0.9997149311583164, 0.9997209503265438, 0.9997268484106133, 0.9997326277079316,
    0.9997382904754143, 0.9997438389301321, 0.9997492752499476, 0.9997546015741444,
    0.9997598200040464, 0.999764932603629, 0.999769941400122, 0.9997748483846036,
    0.9997796555125867, 0.9997843647045962, 0.9997889778467384, 0.9997934967912628,
    0.999797923357116, 0.9998022593304864, 0.9998065064653422, 0.9998106664839624,
    0.9998147410774584, 0.9998187319062888, 0.999822640600768, 0.9998264687615651,
    0.9998302179601976, 0.9998338897395165, 0.9998374856141853, 0.9998410070711514,
    0.9998444555701105, 0.9998478325439643, 0.9998511393992717, 0.9998543775166927,
    0.9998575482514265, 0.9998606529336417, 0.9998636928689021, 0.9998666693385836,
    0.9998695836002873, 0.9998724368882446, 0.9998752304137165, 0.9998779653653878,
    0.9998806429097539, 0.9998832641915026, 0.9998858303338903, 0.9998883424391108,
    0.999890801588661, 0.9998932088436978, 0.9998955652453929, 0.9998978718152793,
    0.9999001295555937, 0.9999023394496133, 0.9999045024619876, 0.9999066195390646,
    0.9999086916092119, 0.9999107195831332, 0.9999127043541789, 0.999914646798653,
    0.9999165477761143, 0.9999184081296724, 0.9999202286862803, 0.9999220102570213,
    0.9999237536373914, 0.9999254596075774, 0.9999271289327308, 0.9999287623632364,
    0.9999303606349771, 0.9999319244695951, 0.9999334545747474, 0.9999349516443578,
    0.9999364163588655, 0.9999378493854684, 0.9999392513783631, 0.9999406229789812,
    0.9999419648162208, 0.9999432775066749, 0.999944561654856, 0.9999458178534167,
    0.9999470466833665, 0.9999482487142854, 0.9999494245045342, 0.9999505746014596,
    0.9999516995415985, 0.9999527998508764, 0.9999538760448039, 0.9999549286286696,
    0.9999559580977294, 0.9999569649373927, 0.999957949623406, 0.9999589126220323,
    0.9999598543902286, 0.9999607753758193, 0.9999616760176675, 0.999962556745843,
    0.9999634179817872, 0.9999642601384755, 0.9999650836205766, 0.9999658888246092,
    0.9999666761390966, 0.999967445944717, 0.9999681986144527, 0.9999689345137363,
    0.9999696540005938, 0.9999703574257861, 0.999971045132947, 0.9999717174587197,
    0.9999723747328902, 0.9999730172785192, 0.9999736454120698, 0.999974259443536,
    0.9999748596765659, 0.9999754464085842, 0.9999760199309125, 0.9999765805288873,
    0.9999771284819754, 0.9999776640638882, 0.999978187542693, 0.9999786991809224,
    0.9999791992356832, 0.9999796879587608, 0.999980165596724, 0.9999806323910264,
    0.9999810885781071, 0.9999815343894882, 0.9999819700518724, 0.9999823957872367,
    0.999982811812926, 0.9999832183417444, 0.9999836155820446, 0.9999840037378164,
    0.9999843830087721, 0.9999847535904326, 0.9999851156742093, 0.9999854694474869,
    0.9999858150937029, 0.9999861527924263, 0.9999864827194352, 0.9999868050467922,
    0.9999871199429189, 0.9999874275726689, 0.9999877280973996, 0.9999880216750416,
    0.9999883084601691, 0.9999885886040661, 0.9999888622547938, 0.9999891295572549,
    0.9999893906532584, 0.9999896456815814, 0.9999898947780311, 0.9999901380755051,
    0.9999903757040501, 0.9999906077909209, 0.9999908344606359, 0.9999910558350346,
    0.999991272033331, 0.9999914831721683, 0.999991689365671, 0.9999918907254965,
    0.9999920873608866, 0.9999922793787162, 0.9999924668835426, 0.9999926499776534,
    0.9999928287611128, 0.9999930033318085, 0.9999931737854958, 0.9999933402158422,
    0.9999935027144708, 0.9999936613710031, 0.9999938162730997, 0.9999939675065019,
    0.9999941151550719, 0.9999942593008311, 0.9999944000239996, 0.9999945374030336,
    0.9999946715146618, 0.9999948024339225, 0.9999949302341985, 0.9999950549872524,
    0.9999951767632602, 0.9999952956308452, 0.9999954116571108, 0.9999955249076721,
    0.9999956354466879, 0.9999957433368915, 0.9999958486396207, 0.9999959514148474,
    0.9999960517212074, 0.9999961496160278, 0.9999962451553553, 0.9999963383939839,
    0.9999964293854813, 0.9999965181822149, 0.999996604835378, 0.9999966893950147,
    0.9999967719100447, 0.999996852428287, 0.9999969309964845, 0.9999970076603261,
    0.9999970824644704, 0.9999971554525672, 0.9999972266672796, 0.9999972961503056,
    0.9999973639423985, 0.9999974300833875, 0.9999974946121983, 0.9999975575668721,
    0.9999976189845851, 0.999997678901667, 0.9999977373536204, 0.9999977943751378,
    0.9999978500001196, 0.9999979042616922, 0.9999979571922236, 0.9999980088233411,
    0.9999980591859471, 0.9999981083102353, 0.999998156225706, 0.9999982029611814,
    0.9999982485448208, 0.999998293004135, 0.9999983363660008, 0.9999983786566747,
    0.9999984199018074, 0.9999984601264559, 0.9999984993550981, 0.9999985376116449,
    0.9999985749194527, 0.9999986113013363, 0.9999986467795804, 0.9999986813759517,
    0.9999987151117109, 0.9999987480076229, 0.9999987800839689, 0.999998811360557,
    0.9999988418567325, 0.9999988715913886, 0.9999989005829762, 0.9999989288495147,
    0.9999989564086004, 0.9999989832774173, 0.9999990094727457, 0.9999990350109714,
    0.9999990599080948, 0.9999990841797394, 0.9999991078411606, 0.9999991309072541,
    0.9999991533925635, 0.999999175311289, 0.9999991966772946, 0.9999992175041164,
    0.9999992378049695, 0.9999992575927557, 0.9999992768800704, 0.99999929567921,
    0.9999993140021779, 0.9999993318606925, 0.9999993492661925, 0.999999366229844,
    0.9999993827625467, 0.9999993988749398, 0.9999994145774083, 0.9999994298800885,
    0.999999444792874, 0.9999994593254211, 0.9999994734871549, 0.9999994872872737,
    0.9999995007347549, 0.9999995138383598, 0.999999526606639, 0.999999539047937,
    0.999999551170397, 0.9999995629819654, 0.999999574490397, 0.9999995857032589,
    0.9999995966279351, 0.9999996072716308, 0.9999996176413765, 0.9999996277440321,
    0.9999996375862907, 0.9999996471746831, 0.9999996565155812, 0.9999996656152015,
    0.9999996744796091, 0.9999996831147214, 0.9999996915263113, 0.9999996997200103,
    0.999999707701313, 0.9999997154755786, 0.999999723048036, 0.9999997304237851,
    0.9999997376078013, 0.9999997446049376, 0.9999997514199276, 0.9999997580573889,
    0.9999997645218252, 0.9999997708176291, 0.9999997769490854, 0.9999997829203726,
    0.9999997887355665, 0.9999997943986418, 0.9999997999134752, 0.9999998052838472,
    0.9999998105134449, 0.9999998156058635, 0.9999998205646097, 0.9999998253931023,
    0.9999998300946759, 0.9999998346725816, 0.9999998391299898, 0.9999998434699918,
    0.999999847695602, 0.9999998518097594, 0.9999998558153296, 0.9999998597151066,
    0.9999998635118147, 0.9999998672081096, 0.9999998708065808, 0.9999998743097528,
    0.9999998777200866, 0.9999998810399816, 0.9999998842717767, 0.9999998874177519,
    0.9999998904801303, 0.9999998934610783, 0.9999998963627081, 0.9999998991870787,
    0.9999999019361967, 0.9999999046120183, 0.9999999072164499, 0.9999999097513502,
    0.9999999122185304, 0.9999999146197556, 0.9999999169567465, 0.99999991923118,
    0.9999999214446905, 0.9999999235988705, 0.9999999256952723, 0.9999999277354084,
    0.9999999297207529, 0.9999999316527424, 0.9999999335327765, 0.9999999353622194,
    0.9999999371424002, 0.999999938874614, 0.9999999405601229, 0.9999999422001564,
    0.9999999437959127, 0.9999999453485592, 0.9999999468592331, 0.9999999483290427,
    0.9999999497590676, 0.9999999511503596, 0.9999999525039434, 0.9999999538208173,
    0.999999955101954, 0.999999956348301, 0.9999999575607811, 0.9999999587402933,
    0.9999999598877137, 0.9999999610038954, 0.9999999620896693, 0.999999963145845,
    0.9999999641732109, 0.9999999651725351, 0.9999999661445655, 0.9999999670900308,
    0.9999999680096405, 0.9999999689040859, 0.9999999697740399, 0.9999999706201582,
    0.9999999714430791, 0.9999999722434244, 0.9999999730217997, 0.9999999737787945,
    0.9999999745149831, 0.9999999752309247, 0.9999999759271636, 0.9999999766042301,
    0.9999999772626407, 0.999999977902898, 0.9999999785254914, 0.9999999791308976,
    0.9999999797195807, 0.9999999802919923, 0.9999999808485728, 0.9999999813897501,
    0.9999999819159413, 0.9999999824275525, 0.9999999829249788, 0.9999999834086052,
    0.999999983878806, 0.999999984335946, 0.9999999847803801, 0.999999985212454,
    0.9999999856325041, 0.9999999860408577, 0.9999999864378337, 0.9999999868237422,
    0.9999999871988853, 0.9999999875635569, 0.9999999879180431, 0.9999999882626224,
    0.9999999885975658, 0.999999988923137, 0.9999999892395929, 0.9999999895471832,
    0.9999999898461511, 0.9999999901367334, 0.9999999904191601, 0.9999999906936556,
    0.9999999909604379, 0.9999999912197192, 0.999999991471706, 0.9999999917165994,
    0.9999999919545949,
];
