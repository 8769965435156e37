// Reference coefficient listings; do not edit by hand.
use super::RawTable;
use crate::Region;

pub(super) const RAW_TABLES: [RawTable; 12] = [
    RawTable {
        order: -1,
        region: Region::Q1,
        n2: 10,
        coeffs: &[
            ("0.50840463208260678152D-17", "-0.17460815299463749948D-15"),
            ("-0.74591223502642620660D-14", "0.12462600200296453012D-13"),
            ("0.51034244856324824207D-12", "-0.29429847146968217669D-12"),
            ("-0.15527853485027100709D-10", "0.26315851430676356796D-12"),
            ("0.26441404512287963095D-09", "0.13983475139768244907D-09"),
            ("-0.24748763871353093363D-08", "-0.37421319823017115933D-08"),
            ("0.48226858274090904108D-08", "0.54340128932660141072D-07"),
            ("0.21625355372586607508D-06", "-0.50872099870851161398D-06"),
            ("-0.36871705117848123797D-05", "0.30134016655759593920D-05"),
            ("0.34628404889507030160D-04", "-0.73910823070405617219D-05"),
            ("0.99977737459069660694D+00", "-0.57603083624530025151D-04"),
            ("-0.82327858162819693045D-01", "0.84976858037261402153D-03"),
            ("0.61974789354573766566D-03", "-0.60513938190315115982D-02"),
            ("0.56615182294768079637D-01", "0.30290788934912727755D-01"),
            ("-0.13513677999109029679D+00", "-0.11595801511190682178D+00"),
            ("0.20971815296188580167D+00", "0.34917394460827128828D+00"),
            ("-0.13559302399958735143D+00", "-0.83031652814884108813D+00"),
            ("-0.39989898854107271642D+00", "0.15322617865070516148D+01"),
            ("0.17398271638333840850D+01", "-0.20720742240832378654D+01"),
            ("-0.38218064277297175142D+01", "0.16655645078067718066D+01"),
            ("0.57404644363343330931D+01", "0.36441373700438752895D+00"),
            ("-0.60218557453822568030D+01", "-0.36699889432071554424D+01"),
            ("0.38664098293378463250D+01", "0.65632365306504714202D+01"),
            ("-0.25697949139671290942D+00", "-0.71730334400727831101D+01"),
            ("-0.26138368668366285752D+01", "0.52101729871789289259D+01"),
            ("0.33128062049048194583D+01", "-0.22744720239035355439D+01"),
            ("-0.22947550138820496670D+01", "0.21824868540130264477D+00"),
            ("0.97998841946268481518D+00", "0.43081914671714156557D+00"),
            ("-0.23273278868918701241D+00", "-0.30881694364539401656D+00"),
            ("0.13573816724649184659D-01", "0.10103591470624091510D+00"),
            ("0.64717665310787895482D-02", "-0.16204976273553372187D-01"),
            ("-0.11353082240496407813D-02", "0.91111645509511076869D-03"),
        ],
    },
    RawTable {
        order: -1,
        region: Region::Q2,
        n2: 0,
        coeffs: &[
            ("0.99999999999996165301D+00", "0.14180683234758492536D-12"),
            ("-0.83333333315888343156D-01", "-0.18355475502542401539D-10"),
            ("0.34722202099214306218D-02", "0.66429512090231781628D-09"),
            ("0.55459217936935525195D-01", "0.19209070325965982796D-07"),
            ("-0.17477009309488548835D+00", "-0.27235872415655243493D-05"),
            ("0.47557985079285319878D+00", "0.12329339800149018587D-03"),
            ("-0.12044719601488244381D+01", "-0.33379989131254858384D-02"),
            ("0.24160534977076998585D+01", "0.59920404647268786033D-01"),
            ("0.71401934124020221324D+00", "-0.69764699651584141417D+00"),
            ("-0.60367540682210374145D+02", "0.38607796239007672158D+01"),
            ("0.60545135048209986187D+03", "0.32429279475615845398D+02"),
            ("-0.45946367108344566727D+04", "-0.10841949093356820460D+04"),
            ("0.28358573752155457724D+05", "0.14766714227455119633D+05"),
            ("-0.13554840952273842275D+06", "-0.13629699320708838668D+06"),
            ("0.42722335885416276983D+06", "0.93640538562551055857D+06"),
            ("-0.18717734419017137932D+06", "-0.49014636853552340206D+07"),
            ("-0.76674698133130508647D+07", "0.19293996919633486842D+08"),
            ("0.56621620119877490002D+08", "-0.53379687761932413868D+08"),
            ("-0.24544626054098569413D+09", "0.76969984306318530811D+08"),
            ("0.73652406083022339655D+09", "0.11898870845017090857D+09"),
            ("-0.15200293963699011585D+10", "-0.11167744707665950837D+10"),
            ("0.18157636339201652460D+10", "0.37001812450286450398D+10"),
            ("0.23697005105214074056D+09", "-0.76973235212132828329D+10"),
            ("-0.60541865274209691412D+10", "0.10509437050190981895D+11"),
            ("0.13447347591183417529D+11", "-0.82869660102657042317D+10"),
            ("-0.16538600326905832899D+11", "0.87889333133786055548D+09"),
            ("0.12108038654949012813D+11", "0.58320160548830925371D+10"),
            ("-0.45881323770532016082D+10", "-0.64591210758282531847D+10"),
            ("0.33559769561348792357D+09", "0.30012974946895292083D+10"),
            ("0.21590442067376607526D+09", "-0.51553627638896435829D+09"),
        ],
    },
    RawTable {
        order: -1,
        region: Region::Q3,
        n2: 0,
        coeffs: &[
            ("0.10000000000000000211D+01", "0.17867305969317471010D-16"),
            ("-0.83333333333337062447D-01", "-0.97723166437483860903D-14"),
            ("0.34722222219662307873D-02", "0.18575099531415563550D-11"),
            ("0.55459105063779291569D-01", "-0.17036760654072501033D-09"),
            ("-0.17476652435372606609D+00", "0.72097356819624208386D-08"),
            ("0.47552180369947961103D+00", "0.45886722797104214745D-07"),
            ("-0.12045748284986630605D+01", "-0.23432576523368445886D-04"),
            ("0.24476460069464141708D+01", "0.14488404302693181855D-02"),
            ("-0.19443570247379529707D+00", "-0.51284106279947756551D-01"),
            ("-0.44775070512394599808D+02", "0.11973398083848165562D+01"),
            ("0.42163459709409223079D+03", "-0.18732584217083190217D+02"),
            ("-0.30990846226113832847D+04", "0.18064501304516396811D+03"),
            ("0.20913884916390585368D+05", "-0.59296211153624558148D+03"),
            ("-0.12895996355054874785D+06", "-0.10821482660282026169D+05"),
            ("0.67085295525681611041D+06", "0.19808862750865237678D+06"),
            ("-0.26337877182586616150D+07", "-0.16813332113288193078D+07"),
            ("0.67096341894817561042D+07", "0.85931950401381414532D+07"),
            ("-0.76571281908120841443D+07", "-0.26572627858717182234D+08"),
            ("-0.59803448026875748509D+07", "0.44801684284187004703D+08"),
            ("0.19209322347765871037D+08", "-0.30066013610259277074D+08"),
        ],
    },
    RawTable {
        order: 0,
        region: Region::Q1,
        n2: 11,
        coeffs: &[
            ("-0.90832607641433626723D-16", "-0.12971716857438253177D-15"),
            ("0.12389804620230878343D-14", "0.12374086345769475560D-13"),
            ("0.18925665936446973863D-12", "-0.43594042425001909808D-12"),
            ("-0.93436124699082728782D-11", "0.71610240171455947215D-11"),
            ("0.21005471373426356192D-09", "-0.31570720100508497322D-10"),
            ("-0.27921469604412283831D-08", "-0.10267754766776108185D-08"),
            ("0.22210697286892781643D-07", "0.25281961277933484578D-07"),
            ("-0.71494613675879873372D-07", "-0.30771058781715872427D-06"),
            ("-0.63954539217286436591D-06", "0.24264961215641857661D-05"),
            ("0.11477599934330755236D-04", "-0.12692783111400141826D-04"),
            ("-0.94447601385518738118D-04", "0.36582122360442313063D-04"),
            ("0.10005227131416389419D+01", "0.42527679632933790645D-04"),
            ("-0.85416339695541973974D-01", "-0.11668274275597700974D-02"),
            ("0.92680088758957499003D-01", "0.75525130431164108091D-02"),
            ("-0.12830962183399732914D+00", "-0.31999279672322587569D-01"),
            ("0.18262801902460105636D+00", "0.10112601789451786253D+00"),
            ("-0.22086524963618477505D+00", "-0.24794786230219646677D+00"),
            ("0.16700979504519707012D+00", "0.47574461283438653640D+00"),
            ("0.62230841342939847177D-01", "-0.70546898276037268906D+00"),
            ("-0.46160590435660301333D+00", "0.77405336431438665012D+00"),
            ("0.86282905145667261861D+00", "-0.54883285003677036633D+00"),
            ("-0.10157725409050061178D+01", "0.89653554833115686588D-01"),
            ("0.81127042933258073193D+00", "0.34223426976661392785D+00"),
            ("-0.40588870780744941328D+00", "-0.50414950527612358637D+00"),
            ("0.70646295770216518095D-01", "0.39020053902964327900D+00"),
            ("0.62576278207207491689D-01", "-0.18665248819340615755D+00"),
            ("-0.56069463746156990540D-01", "0.51369345024189480453D-01"),
            ("0.20854565059593331201D-01", "-0.49622460298807761080D-02"),
            ("-0.37736411371630856848D-02", "-0.10706620427594972634D-02"),
            ("0.24658062816300990462D-03", "0.24793548656986345025D-03"),
        ],
    },
    RawTable {
        order: 0,
        region: Region::Q2,
        n2: 0,
        coeffs: &[
            ("0.99999999999988637217D+00", "-0.86635400939375232846D-13"),
            ("-0.83333333323131499972D-01", "0.22519321671024025250D-10"),
            ("0.86805555689429826898D-01", "-0.20734497580441697938D-08"),
            ("-0.11815206514175737947D+00", "0.96339270441630372077D-07"),
            ("0.17969333057187777654D+00", "-0.23057043651727157918D-05"),
            ("-0.24337342169790375842D+00", "0.98098354524518453957D-05"),
            ("0.14764429473872620763D-01", "0.12782321450918857049D-02"),
            ("0.23309627937902507555D+01", "-0.51073707172260220779D-01"),
            ("-0.16480981490288764106D+02", "0.11291585827876199238D+01"),
            ("0.92305117544447684520D+02", "-0.17262096251706180600D+02"),
            ("-0.51600417922753718015D+03", "0.19328752764190907274D+03"),
            ("0.32464931691139105961D+04", "-0.15901053336317843819D+04"),
            ("-0.22314060512920598345D+05", "0.90599663123843335441D+04"),
            ("0.14604708231321899614D+06", "-0.26233323039837437629D+05"),
            ("-0.81145513740976803311D+06", "-0.98104807756320344084D+05"),
            ("0.35457971304583219348D+07", "0.18294948704040264718D+07"),
            ("-0.11084057351725538629D+08", "-0.13170160809055557556D+08"),
            ("0.17946742587727355394D+08", "0.62986605485232028006D+08"),
            ("0.35800094666248698896D+08", "-0.21614451081432945159D+09"),
            ("-0.37304955427569800721D+09", "0.52194699072674118229D+09"),
            ("0.14479420488451058753D+10", "-0.75867692917492941354D+09"),
            ("-0.35951788816564166863D+10", "0.22618398696580184017D+08"),
            ("0.60001115021506662033D+10", "0.31006219604826621451D+10"),
            ("-0.60780548332669974319D+10", "-0.87891548726761143921D+10"),
            ("0.15576242961336566425D+10", "0.13885136549901956758D+11"),
            ("0.55250083598538675266D+10", "-0.13622496533575828228D+11"),
            ("-0.92625760934489411655D+10", "0.75732780185372212772D+10"),
            ("0.69543035636142439747D+10", "-0.12850366647773799533D+10"),
            ("-0.25630570764916110006D+10", "-0.85541751450691424086D+09"),
            ("0.33863352297553708594D+09", "0.36939690751181780209D+09"),
        ],
    },
    RawTable {
        order: 0,
        region: Region::Q3,
        n2: 0,
        coeffs: &[
            ("0.99999999999999996930D+00", "0.17593864033911935746D-16"),
            ("-0.83333333333319900902D-01", "-0.16846147898292977950D-15"),
            ("0.86805555553423816181D-01", "-0.11453394704160148063D-11"),
            ("-0.11815200602347672298D+00", "0.23048385969290284678D-09"),
            ("0.17968950772370040285D+00", "-0.21945385998958748345D-07"),
            ("-0.24323777650814324772D+00", "0.12087954626873876383D-05"),
            ("0.11700570395152938411D-01", "-0.38103854798729283635D-04"),
            ("0.23745206848674586241D+01", "0.41346400173493025458D-03"),
            ("-0.16758837066520389957D+02", "0.20437630577696960942D-01"),
            ("0.88966545765421650942D+02", "-0.12064317238786081373D+01"),
            ("-0.39494374065352553320D+03", "0.33912080437719049806D+02"),
            ("0.14059897264393353350D+04", "-0.62474820464709927286D+03"),
            ("-0.40451355322086019935D+04", "0.80876358650678996996D+04"),
            ("0.19384543104359811933D+05", "-0.74559599790322239386D+05"),
            ("-0.20517688352680136030D+06", "0.48086289900895412320D+06"),
            ("0.17043521840830888384D+07", "-0.20518647360918521409D+07"),
            ("-0.87705077033153779372D+07", "0.49903982905075629408D+07"),
            ("0.26797195290998643893D+08", "-0.30874807345514436382D+07"),
            ("-0.43448795451180985546D+08", "-0.14198190720585577590D+08"),
            ("0.26693074419888988636D+08", "0.25674511583029811722D+08"),
        ],
    },
    RawTable {
        order: 1,
        region: Region::Q1,
        n2: 11,
        coeffs: &[
            ("0.11005198342846485755D-15", "-0.69497479897694901798D-16"),
            ("-0.10253717390952836750D-13", "0.57344733061298400754D-15"),
            ("0.35541980746147250213D-12", "0.17138035947739436987D-12"),
            ("-0.57065663426773316925D-11", "-0.80097752680384861353D-11"),
            ("0.21377942402322032801D-10", "0.17745761143488866634D-09"),
            ("0.92504177773563681659D-09", "-0.23491690282446912066D-08"),
            ("-0.21958132206773784869D-07", "0.18715255541162079236D-07"),
            ("0.26744146813435088020D-06", "-0.60538192727561566571D-07"),
            ("-0.21417964338884026393D-05", "-0.55166777471060148467D-06"),
            ("0.11605229803403698059D-04", "0.10089206827157776627D-04"),
            ("-0.36902286245955926331D-04", "-0.85734523630464858844D-04"),
            ("0.99998886026520537047D+00", "0.49984760395796500059D-03"),
            ("0.41764834336748872867D+00", "-0.21759152835287886250D-02"),
            ("-0.12880435876254801279D+00", "0.72384623466304053406D-02"),
            ("0.10001797075393494104D+00", "-0.18204681378409207336D-01"),
            ("-0.12326994533416519599D+00", "0.32494324768891981532D-01"),
            ("0.19390815724013910177D+00", "-0.31048056008057556412D-01"),
            ("-0.30446220948476603076D+00", "-0.28094371375086694729D-01"),
            ("0.40217178304394830919D+00", "0.18701432829068936487D+00"),
            ("-0.39045411378013014641D+00", "-0.42965195739247365992D+00"),
            ("0.20299486067051564492D+00", "0.64270959413495860386D+00"),
            ("0.10086985423793876517D+00", "-0.67712707054748086683D+00"),
            ("-0.34706311627097173040D+00", "0.48943085630911667832D+00"),
            ("0.39717127772830854281D+00", "-0.20388651987798637536D+00"),
            ("-0.27627970190658614495D+00", "-0.36920639378264876881D-02"),
            ("0.12093911370868755832D+00", "0.67168398413971524804D-01"),
            ("-0.28845724988884421284D-01", "-0.45442309954198940539D-01"),
            ("0.97253793671434469328D-03", "0.15236745276873557399D-01"),
            ("0.11989911484170176670D-02", "-0.25400926250086296020D-02"),
            ("-0.20436565348663071365D-03", "0.14672057879876671250D-03"),
        ],
    },
    RawTable {
        order: 1,
        region: Region::Q2,
        n2: 0,
        coeffs: &[
            ("0.10000000000001559822D+01", "-0.64432580975613771082D-13"),
            ("0.41666666663765045792D+00", "-0.30929290380316585308D-11"),
            ("-0.12152777575602031881D+00", "0.13847887495450779512D-08"),
            ("0.64139599010730684601D-01", "-0.11804143890505963878D-06"),
            ("0.19340333876868250914D-01", "0.52525129103659222882D-05"),
            ("-0.31085396288117458325D+00", "-0.14209942615180352958D-03"),
            ("0.14076112393497740595D+01", "0.22843270818239797021D-02"),
            ("-0.53034603582858591137D+01", "-0.12508426902104267053D-01"),
            ("0.16843969837042581097D+02", "-0.39633859151173122745D+00"),
            ("-0.30896103962008743537D+02", "0.13366867242921989470D+02"),
            ("-0.12354078658896338072D+03", "-0.23100296557839310161D+03"),
            ("0.16486028729189802772D+04", "0.27798011316789725915D+04"),
            ("-0.79365600281962572617D+04", "-0.25085379438345641690D+05"),
            ("-0.17876338162032969792D+04", "0.17337711302201102756D+06"),
            ("0.36042195374432098049D+06", "-0.90932303898462350515D+06"),
            ("-0.33818329308700649502D+07", "0.34283955443872702745D+07"),
            ("0.19449202897749494834D+08", "-0.74625499598352743942D+07"),
            ("-0.79047083372251398893D+08", "-0.61704036445636743642D+07"),
            ("0.22787889419550420217D+09", "0.13542454969531036697D+09"),
            ("-0.41550638595000604177D+09", "-0.65483373280300662671D+09"),
            ("0.17290712369617688112D+09", "0.19664895233379210138D+10"),
            ("0.16763777971399520871D+10", "-0.40005075227615193294D+10"),
            ("-0.63097117018939634689D+10", "0.51442671230430695393D+10"),
            ("0.12639623708614918540D+11", "-0.24250533919233200087D+10"),
            ("-0.16021424838185937866D+11", "-0.51063223260105245852D+10"),
            ("0.12194470039177973074D+11", "0.12801295658115048467D+11"),
            ("-0.36617569740928099053D+10", "-0.13906995324951658335D+11"),
            ("-0.20882430849265640704D+10", "0.82351413910371916318D+10"),
            ("0.22256324759689985206D+10", "-0.23606999259817906485D+10"),
            ("-0.57357275466466452587D+09", "0.18100167963268264995D+09"),
        ],
    },
    RawTable {
        order: 1,
        region: Region::Q3,
        n2: 0,
        coeffs: &[
            ("0.10000000000000000088D+01", "-0.37104682094436741073D-16"),
            ("0.41666666666665693268D+00", "0.10633105786560679943D-13"),
            ("-0.12152777777532530135D+00", "-0.81783483309751920964D-12"),
            ("0.64139660206844395055D-01", "-0.53206746309599215652D-10"),
            ("0.19340376146506349534D-01", "0.14714309085259108266D-07"),
            ("-0.31092901473600760433D+00", "-0.12847633757844741159D-05"),
            ("0.14108230204421526148D+01", "0.64029804309267135469D-04"),
            ("-0.53814287035192935174D+01", "-0.19729163937458920069D-02"),
            ("0.18099040506545928510D+02", "0.33959266046710551528D-01"),
            ("-0.44222521101771005259D+02", "-0.46443129149364017364D-01"),
            ("-0.49281712505609892221D+02", "-0.14673338698274539790D+02"),
            ("0.19120731039799297866D+04", "0.44654655766491527724D+03"),
            ("-0.18480296407139556113D+05", "-0.76529257176182418914D+04"),
            ("0.11949451283301751133D+06", "0.88037548115504996527D+05"),
            ("-0.51411364057002663824D+06", "-0.70563400281206830770D+06"),
            ("0.10973535392819828712D+07", "0.39099452669156576703D+07"),
            ("0.17331435565199135031D+07", "-0.14355007661133573735D+08"),
            ("-0.19127195748032646177D+08", "0.31757253245227946371D+08"),
            ("0.50801574443329963657D+08", "-0.33700657946301331333D+08"),
            ("-0.47910288059234253994D+08", "0.61171907037609011958D+07"),
        ],
    },
    RawTable {
        order: 2,
        region: Region::Q1,
        n2: 11,
        coeffs: &[
            ("0.31866632685819612221D-16", "0.62278738969830137987D-16"),
            ("0.23374202488114714431D-15", "-0.58368186829092031391D-14"),
            ("-0.12464763262921601144D-12", "0.20259199528722770999D-12"),
            ("0.54938914867389395195D-11", "-0.30688169770355401691D-11"),
            ("-0.12158575842106281373D-09", "0.20706119567919592298D-12"),
            ("0.16018003273928560165D-08", "0.88216842473436341238D-09"),
            ("-0.11941475881449767865D-07", "-0.18815539800292924303D-07"),
            ("0.15306868790345339446D-07", "0.22567034551573649710D-06"),
            ("0.80407254481241384544D-06", "-0.17772860498030423720D-05"),
            ("-0.11465040286971344849D-04", "0.88993097363922792729D-05"),
            ("0.92698417450695281624D-04", "-0.17153044258356809874D-04"),
            ("0.99948171991549382451D+00", "-0.15046194458696453245D-03"),
            ("0.14187062252412931802D+01", "0.18349141691729387994D-02"),
            ("-0.12647835873372535821D+00", "-0.11428276705995908659D-01"),
            ("0.18603598111474663325D+00", "0.50646899433597524505D-01"),
            ("-0.28764948748580855321D+00", "-0.17268243476553171463D+00"),
            ("0.37671933372380252436D+00", "0.46496076480920682474D+00"),
            ("-0.28673562730306685162D+00", "-0.99215999495574618374D+00"),
            ("-0.25260802503698437799D+00", "0.16511988403580568251D+01"),
            ("0.14171261472971538418D+01", "-0.20381244501795426809D+01"),
            ("-0.29457967249708858073D+01", "0.15782077203635430607D+01"),
            ("0.40284406518941590462D+01", "-0.37723354335564292819D-01"),
            ("-0.38128950013920692643D+01", "-0.19907064876530093167D+01"),
            ("0.22475249180098600179D+01", "0.33343987769848875142D+01"),
            ("-0.29845507995469994980D+00", "-0.32351706541913757406D+01"),
            ("-0.89544287444481992984D+00", "0.20454467870089365942D+01"),
            ("0.10175639567579240708D+01", "-0.77474351850574639868D+00"),
            ("-0.58788778865800093021D+00", "0.83503119281933322786D-01"),
            ("0.20009319020081182763D+00", "0.77689730095477593636D-01"),
            ("-0.35965432090839096074D-01", "-0.43797603367743883119D-01"),
            ("0.16769420558534530117D-02", "0.95756365430182522746D-02"),
            ("0.27256710553195448121D-03", "-0.76612682266254092889D-03"),
        ],
    },
    RawTable {
        order: 2,
        region: Region::Q2,
        n2: 0,
        coeffs: &[
            ("0.99999999999998061808D+00", "0.16248252113309315678D-12"),
            ("0.14166666666829275403D+01", "-0.23049278428420443693D-10"),
            ("-0.12152777988809406380D+00", "0.10578621411215754890D-08"),
            ("0.18566756593083182116D+00", "0.28424278401127180014D-08"),
            ("-0.35199891174698963256D+00", "-0.24190974576544113333D-05"),
            ("0.74514028477189295514D+00", "0.12627505833721768389D-03"),
            ("-0.15698688665407300795D+01", "-0.36906906699773089097D-02"),
            ("0.24402663496436078603D+01", "0.71150880132384387316D-01"),
            ("0.42564778384044014501D+01", "-0.92028028234742281569D+00"),
            ("-0.86628781485086884613D+02", "0.69659670041612025801D+01"),
            ("0.76780431897157477513D+03", "0.12336022855791130638D+01"),
            ("-0.56054291413858448509D+04", "-0.86886243977848514246D+03"),
            ("0.34709760011543563256D+05", "0.13997432791721954713D+05"),
            ("-0.17268737514629848298D+06", "-0.13922909431496294516D+06"),
            ("0.61187840164952315907D+06", "0.10063302790914770506D+07"),
            ("-0.90229280253909143653D+06", "-0.55090070720520207541D+07"),
            ("-0.58239693510024439315D+07", "0.22810067701144771236D+08"),
            ("0.55585305303478347757D+08", "-0.68226520995783255732D+08"),
            ("-0.26301929032497527308D+09", "0.12293641811239037282D+09"),
            ("0.84052909616481142218D+09", "0.21196827324494884533D+08"),
            ("-0.18657792154606295188D+10", "-0.10131267803607086455D+10"),
            ("0.25915388904113076082D+10", "0.38427156992160196076D+10"),
            ("-0.92517922470966062167D+09", "-0.86034302033451782637D+10"),
            ("-0.51036926935170978903D+10", "0.12626524314344868926D+11"),
            ("0.13657170819172273067D+11", "-0.11301642152404259095D+11"),
            ("-0.18234815409451008101D+11", "0.35546723514474331442D+10"),
            ("0.14355121657220596589D+11", "0.45839423517954065893D+10"),
            ("-0.61032052837541757328D+10", "-0.64509344322401839565D+10"),
            ("0.84275175499628369228D+09", "0.32773844995198787342D+10"),
            ("0.15857079566801991882D+09", "-0.60570352545416858098D+09"),
        ],
    },
    RawTable {
        order: 2,
        region: Region::Q3,
        n2: 0,
        coeffs: &[
            ("0.10000000000000000268D+01", "0.16274386801955295004D-16"),
            ("0.14166666666666607632D+01", "-0.10287883462694876761D-13"),
            ("-0.12152777777773596334D+00", "0.21278064340420781315D-11"),
            ("0.18566743838222558548D+00", "-0.21346739588855205915D-09"),
            ("-0.35199453421212974648D+00", "0.10810020949854670351D-07"),
            ("0.74505620178581604077D+00", "-0.12758335415838672536D-06"),
            ("-0.15694400222283724037D+01", "-0.19194750913862712585D-04"),
            ("0.24655058999322356159D+01", "0.14693073094005325564D-02"),
            ("0.33607089142515892731D+01", "-0.57088317524506061035D-01"),
            ("-0.69853332457831300099D+02", "0.14378014381758075690D+01"),
            ("0.55610818499114251623D+03", "-0.24643410535733376707D+02"),
            ("-0.37382459971986918636D+04", "0.27993273451335282871D+03"),
            ("0.23868572841373643577D+05", "-0.17730529258353887568D+04"),
            ("-0.14415275031702837209D+06", "-0.95697379334253398976D+03"),
            ("0.75853591811873756981D+06", "0.14271567167383035412D+06"),
            ("-0.30972861668769145538D+07", "-0.15003099051227929984D+07"),
            ("0.85376658237794416873D+07", "0.84572529844164518814D+07"),
            ("-0.12288668565761833934D+08", "-0.27945310142205107664D+08"),
            ("0.26869963259519375012D+06", "0.49973783788775688447D+08"),
            ("0.16376853579174702084D+08", "-0.35949830322064479962D+08"),
        ],
    },
];

pub(super) const RAW_TABLES_SHA256: &str =
    "52df990218e1c15a6ffefc8efb5a50f9e0fc5ca7fe654e3b07d09a950ffac780";
